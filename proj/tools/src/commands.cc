// Copyright 2026 The qswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qswitch_tools/commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qswitch/metrology.h"
#include "qswitch/montecarlo.h"
#include "qswitch/switch.h"

namespace qswitch::tools {

namespace {

constexpr double kTraceTolerance = 1e-9;
constexpr double kLawTolerance = 1e-10;
constexpr double kFrequencyTolerance = 1e-6;
constexpr double kGeneratorTolerance = 1e-4;
constexpr double kHupSlack = 0.02;

// Runs body(i) for i in [0, n) on up to `workers` threads; results must be
// written by index so the schedule does not matter.
template <typename F>
void parallel_for(std::size_t n, int workers, F body) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
    }
    for (const std::exception_ptr &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

DoveTrainModel optics_from(const DoveConfig &d) {
    return {d.alpha0, d.delta, d.rho, d.deflection_on, d.compensation_on};
}

JointState input_state(const ExperimentConfig &cfg) {
    const std::vector<OamAmplitude> amps = cfg.probe.amplitudes();
    int lo = amps.front().index;
    int hi = lo;
    for (const OamAmplitude &a : amps) {
        lo = std::min(lo, a.index);
        hi = std::max(hi, a.index);
    }
    return make_state(PolarizationKet::H(), amps, window_for(cfg.l, lo, hi));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double fit_model(const FitReport &f, double theta) {
    return 0.5 * (f.offset - f.visibility * std::cos(f.frequency * theta + f.phi0));
}

double relative_frequency_error(const FitReport &f, const ExperimentConfig &cfg) {
    return std::abs(f.frequency / (4.0 * cfg.m * cfg.l) - 1.0);
}

}  // namespace

FringeResult compute_fringe(const ExperimentConfig &cfg, int workers) {
    cfg.validate();
    if (!cfg.theta_sweep) {
        fail(ErrorKind::kConfig, "field theta_sweep: the fringe command needs a theta sweep");
    }
    const std::vector<double> grid = cfg.theta_sweep->grid();
    const double phi0 = cfg.phi0_for(grid.front());
    const DoveTrainModel optics = optics_from(cfg.dove);
    const JointState input = input_state(cfg);
    const NoiseModel noise = cfg.noise.model();
    const auto repeats = static_cast<std::size_t>(cfg.trials);
    const double nu = static_cast<double>(cfg.nu);

    FringeResult out;
    out.rows.resize(grid.size());
    std::vector<double> deviation(grid.size(), 0.0);
    parallel_for(grid.size(), workers, [&](std::size_t i) {
        const double theta = grid[i];
        const SwitchParams p{cfg.m, cfg.l, theta, phi0};
        FringeRow &row = out.rows[i];
        row.theta = theta;
        row.p_ideal = project_probability(run_roundtrip(p, optics, input).final_state);
        deviation[i] = std::abs(row.p_ideal - 0.5 * (1.0 - std::cos(4.0 * cfg.m * cfg.l * theta + phi0)));
        const TrialSpec spec{cfg.m, cfg.l, theta, phi0, cfg.nu, noise, cfg.seed};
        double sum = 0.0;
        double sq = 0.0;
        for (std::size_t r = 0; r < repeats; ++r) {
            const TrialResult t = simulate_count(spec, i * repeats + r);
            const double ph = static_cast<double>(t.count) / nu;
            sum += ph;
            sq += ph * ph;
        }
        const double n = static_cast<double>(repeats);
        row.p_noisy_mean = sum / n;
        const double var = repeats > 1 ? std::max(0.0, (sq - n * row.p_noisy_mean * row.p_noisy_mean) / (n - 1.0)) : 0.0;
        row.p_noisy_sem = std::sqrt(var / n);
    });
    out.max_law_deviation = *std::max_element(deviation.begin(), deviation.end());

    std::vector<SweepPoint> noisy;
    std::vector<SweepPoint> ideal;
    for (const FringeRow &r : out.rows) {
        noisy.push_back({r.theta, r.p_noisy_mean, nu * static_cast<double>(repeats)});
        ideal.push_back({r.theta, r.p_ideal, nu});
    }
    out.fit = fit_fringe(noisy, cfg.m, cfg.l);
    out.ideal_fit = fit_fringe(ideal, cfg.m, cfg.l);
    for (FringeRow &r : out.rows) {
        r.fit_curve = fit_model(out.fit, r.theta);
    }
    return out;
}

CommandOutput cmd_fringe(const ExperimentConfig &cfg, int workers) {
    const FringeResult f = compute_fringe(cfg, workers);
    CommandOutput out;
    out.files.emplace_back("fringe.csv", fringe_csv(f.rows));
    std::string json = fringe_json(cfg, f.fit, static_cast<std::size_t>(cfg.trials));
    {
        auto j = nlohmann::ordered_json::parse(json);
        j["ideal_fit"] = {{"frequency", f.ideal_fit.frequency},
                          {"relative_frequency_error", relative_frequency_error(f.ideal_fit, cfg)},
                          {"phi0", f.ideal_fit.phi0},
                          {"visibility", f.ideal_fit.visibility}};
        j["max_law_deviation"] = f.max_law_deviation;
        json = j.dump(2) + "\n";
    }
    out.files.emplace_back("fringe.json", json);
    out.files.emplace_back("fringe.svg", fringe_svg(f.rows, cfg.name + ": P(theta), (m, l) = (" +
                                                              std::to_string(cfg.m) + ", " + std::to_string(cfg.l) +
                                                              ")"));
    std::ostringstream os;
    os << "fringe (m, l) = (" << cfg.m << ", " << cfg.l << "), " << f.rows.size() << " points\n"
       << "  fitted frequency " << fmt(f.fit.frequency) << " (expected " << 4 * cfg.m * cfg.l << "), visibility "
       << fmt(f.fit.visibility) << ", phi0 " << fmt(f.fit.phi0) << "\n"
       << "  noiseless fit frequency " << fmt(f.ideal_fit.frequency) << ", max |P - law| "
       << fmt(f.max_law_deviation) << "\n";
    out.summary = os.str();
    if (f.max_law_deviation > kLawTolerance) {
        out.violations.push_back("optical train departs from the fringe law by " + fmt(f.max_law_deviation));
    }
    if (relative_frequency_error(f.ideal_fit, cfg) > kFrequencyTolerance) {
        out.violations.push_back("noiseless fit frequency off by " +
                                 fmt(relative_frequency_error(f.ideal_fit, cfg)) + " relative");
    }
    return out;
}

EstimateResult compute_estimate(const ExperimentConfig &cfg, int workers) {
    EstimateResult r;
    NoiseModel noise = cfg.noise.model();
    if (cfg.noise.target_gap) {
        r.calibration = calibrate_jitter_to_gap(cfg, *cfg.noise.target_gap, workers);
        noise.jitter = r.calibration->jitter;
    }
    r.report = run_campaign(cfg, noise, workers);
    r.delta_h_switch = switch_generator_sd(make_probe(cfg.probe.amplitudes(), cfg.l), cfg.m, cfg.l).numeric;
    if (r.report.normalized && r.delta_h_switch > 0.0) {
        r.hup = hup_check(*r.report.normalized, r.delta_h_switch, kHupSlack);
    }
    return r;
}

CommandOutput cmd_estimate(const ExperimentConfig &cfg, int workers) {
    const EstimateResult e = compute_estimate(cfg, workers);
    CommandOutput out;
    out.files.emplace_back("estimate.json", estimation_json(cfg, e.report, e.calibration, e.hup));
    out.files.emplace_back("estimate_trials.csv", estimation_csv(e.report));
    out.summary = estimation_table(e.report);
    if (e.hup) {
        out.summary += "  HUP product (normalized)   " + fmt(e.hup->product) + " against " + fmt(e.hup->bound) + "\n";
    }
    if (e.report.gap) {
        const double gap = *e.report.gap;
        if (cfg.noise.target_gap) {
            if (std::abs(gap / *cfg.noise.target_gap - 1.0) > 1e-3) {
                out.violations.push_back("calibrated gap " + fmt(gap) + " misses the target");
            }
        } else if (e.report.noise.is_ideal() && (gap < 0.85 || gap > 1.25)) {
            out.violations.push_back("ideal campaign gap " + fmt(gap) + " outside [0.85, 1.25]");
        }
    }
    if (e.hup && !e.hup->satisfied) {
        out.violations.push_back("HUP product " + fmt(e.hup->product) + " below " + fmt(e.hup->bound));
    }
    return out;
}

CommandOutput cmd_scaling(const ExperimentConfig &cfg, int workers) {
    const ScalingReport s = scaling_study(cfg.pairs, cfg, workers);
    CommandOutput out;
    out.files.emplace_back("scaling.csv", scaling_csv(s));
    out.files.emplace_back("scaling.json", scaling_json(cfg, s));
    out.files.emplace_back("scaling.svg", scaling_svg(s));
    std::ostringstream os;
    os << "scaling over " << s.points.size() << " pairs\n";
    for (const ScalingPoint &p : s.points) {
        os << "  4ml = " << fmt(p.fourml) << "  rmse*sqrt(nu) = " << fmt(p.rmse_norm) << "  CRB = " << fmt(p.crb_norm)
           << "  gap = " << fmt(p.gap) << "\n";
    }
    os << "  slope " << fmt(s.slope) << ", intercept " << fmt(s.intercept) << " (ln gap at 4ml = 1), against ln(ml) "
       << fmt(s.intercept_vs_ml) << "\n";
    out.summary = os.str();
    if (std::abs(s.slope + 1.0) > 0.05) {
        out.violations.push_back("log-log slope " + fmt(s.slope) + " outside -1 +/- 0.05");
    }
    return out;
}

TraceReport compute_trace(const ExperimentConfig &cfg) {
    cfg.validate();
    const double theta = cfg.theta_true ? cfg.theta_true->rad() : 0.0;
    const SwitchParams p{cfg.m, cfg.l, theta, cfg.phi0_for(theta)};
    const JointState input = input_state(cfg);
    const RoundTrip rt = run_roundtrip(p, optics_from(cfg.dove), input);
    const std::vector<JointState> closed = closed_form_states(p, input);
    TraceReport r;
    r.min_fidelity = 1.0;
    for (std::size_t i = 0; i < rt.trace.stages.size(); ++i) {
        const TraceStage &s = rt.trace.stages[i];
        TraceStageReport st;
        st.label = s.label;
        st.element = s.element;
        st.fidelity = fidelity(s.state, closed[i]);
        st.norm = std::sqrt(s.state.norm_squared());
        st.lz_mean = lz_moments(s.state.renormalized()).mean;
        r.min_fidelity = std::min(r.min_fidelity, st.fidelity);
        r.stages.push_back(st);
    }
    r.final_visibility = fringe_visibility(rt.final_state);
    r.probability = project_probability(rt.final_state);
    r.passed = r.min_fidelity >= 1.0 - kTraceTolerance;
    return r;
}

CommandOutput cmd_trace(const ExperimentConfig &cfg, int) {
    const TraceReport r = compute_trace(cfg);
    CommandOutput out;
    out.files.emplace_back("trace.json", trace_json(cfg, r));
    std::ostringstream os;
    os << "state trace (m, l) = (" << cfg.m << ", " << cfg.l << ")\n";
    for (const TraceStageReport &s : r.stages) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-11s %-24s fidelity %.15f\n", s.label.c_str(), s.element.c_str(),
                      s.fidelity);
        os << buf;
    }
    os << "  final visibility " << fmt(r.final_visibility) << ", P(V) " << fmt(r.probability) << "\n";
    out.summary = os.str();
    if (!r.passed) {
        out.violations.push_back("stage fidelity " + fmt(r.min_fidelity) + " below 1 - 1e-9");
        out.hard_failure = true;
    }
    return out;
}

QfiReport compute_qfi(const ExperimentConfig &cfg, std::optional<double> campaign_normalized) {
    cfg.validate();
    const JointState probe = make_probe(cfg.probe.amplitudes(), cfg.l);
    QfiReport r;
    r.switch_scheme = switch_generator_sd(probe, cfg.m, cfg.l);
    r.multipass = multipass_generator_sd(probe, cfg.m);
    const double theta = cfg.theta_true ? cfg.theta_true->rad() : 0.0;
    r.fisher = fisher_report(fringe_law(cfg.m, cfg.l, cfg.phi0_for(theta), cfg.noise.visibility), theta,
                             static_cast<double>(cfg.nu));
    r.resources = resource_count(cfg.m, cfg.l);
    r.qfi_switch = qfi_pure(r.switch_scheme.numeric);
    r.qfi_multipass = qfi_pure(r.multipass.numeric);
    if (campaign_normalized && r.switch_scheme.numeric > 0.0) {
        r.hup = hup_check(*campaign_normalized, r.switch_scheme.numeric, kHupSlack);
    }
    return r;
}

CommandOutput cmd_qfi(const ExperimentConfig &cfg, int) {
    std::optional<double> normalized;
    const std::filesystem::path previous = std::filesystem::path(cfg.output.dir) / "estimate.json";
    if (std::filesystem::exists(previous)) {
        std::ifstream in(previous);
        const auto j = nlohmann::json::parse(in, nullptr, false);
        if (!j.is_discarded() && j.value("m", 0) == cfg.m && j.value("l", 0) == cfg.l &&
            j.contains("normalized_precision_rad") && j["normalized_precision_rad"].is_number()) {
            normalized = j["normalized_precision_rad"].get<double>();
        }
    }
    const QfiReport r = compute_qfi(cfg, normalized);
    CommandOutput out;
    out.files.emplace_back("qfi.json", qfi_json(cfg, r));
    std::ostringstream os;
    os << "generators (m, l) = (" << cfg.m << ", " << cfg.l << "), N_g = " << r.resources << "\n"
       << "  switch    dh numeric " << fmt(r.switch_scheme.numeric) << ", 2m dLz + 2ml " << fmt(r.switch_scheme.analytic)
       << ", exact " << fmt(r.switch_scheme.exact) << "\n"
       << "  multipass dh numeric " << fmt(r.multipass.numeric) << ", 2m dLz " << fmt(r.multipass.analytic) << "\n"
       << "  per-photon FI " << fmt(r.fisher.per_photon_fi) << ", CRB " << fmt(r.fisher.crb) << " rad\n";
    if (r.hup) {
        os << "  HUP product " << fmt(r.hup->product) << " against " << fmt(r.hup->bound) << "\n";
    }
    out.summary = os.str();
    const bool eigen = cfg.probe.kind == ProbeKind::kEigenstate;
    const double sw_ref = eigen ? r.switch_scheme.analytic : r.switch_scheme.exact;
    if (std::abs(r.switch_scheme.numeric - sw_ref) > kGeneratorTolerance * sw_ref) {
        out.violations.push_back("switch generator SD " + fmt(r.switch_scheme.numeric) + " differs from " + fmt(sw_ref));
    }
    const double mp_ref = r.multipass.analytic;
    if (std::abs(r.multipass.numeric - mp_ref) > kGeneratorTolerance * std::max(mp_ref, 1.0)) {
        out.violations.push_back("multipass generator SD " + fmt(r.multipass.numeric) + " differs from " + fmt(mp_ref));
    }
    if (r.hup && !r.hup->satisfied) {
        out.violations.push_back("HUP product " + fmt(r.hup->product) + " below " + fmt(r.hup->bound));
    }
    return out;
}

std::string resolve_output_dir(const CliOptions &opts, const ExperimentConfig &cfg) {
    if (opts.out) {
        return *opts.out;
    }
    if (const char *env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
        return env;
    }
    return cfg.output.dir;
}

int run_cli(const CliOptions &opts, std::ostream &out, std::ostream &err) {
    try {
        ExperimentConfig cfg = load_config(opts.config_path);
        if (opts.seed) {
            cfg.seed = *opts.seed;
        }
        if (opts.workers) {
            cfg.workers = *opts.workers;
        }
        cfg.output.dir = resolve_output_dir(opts, cfg);
        cfg.validate();

        CommandOutput result;
        if (opts.command == "fringe") {
            result = cmd_fringe(cfg, cfg.workers);
        } else if (opts.command == "estimate") {
            result = cmd_estimate(cfg, cfg.workers);
        } else if (opts.command == "scaling") {
            result = cmd_scaling(cfg, cfg.workers);
        } else if (opts.command == "trace") {
            result = cmd_trace(cfg, cfg.workers);
        } else if (opts.command == "qfi") {
            result = cmd_qfi(cfg, cfg.workers);
        } else {
            err << "unknown command " << opts.command << "\n";
            return kExitConfig;
        }

        const bool json_only = opts.command == "trace" || opts.command == "qfi";
        for (const auto &[name, content] : result.files) {
            const std::string ext = std::filesystem::path(name).extension().string().substr(1);
            if (json_only || cfg.output.wants(ext)) {
                write_text_file(cfg.output.dir, name, content);
            }
        }
        out << result.summary;
        for (const std::string &v : result.violations) {
            err << "check: " << v << "\n";
        }
        if (result.hard_failure || (opts.check && !result.violations.empty())) {
            return kExitCheck;
        }
        return kExitOk;
    } catch (const Error &e) {
        err << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
        return is_numerical(e.kind()) ? kExitNumerical : kExitConfig;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qswitch::tools
