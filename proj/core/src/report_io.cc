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

#include "qswitch/report_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "qswitch/units.h"

namespace qswitch {

namespace {

using nlohmann::ordered_json;

ordered_json header(const ExperimentConfig &cfg, std::string_view command) {
    ordered_json j;
    j["artifact"] = "qswitch";
    j["version"] = kArtifactVersion;
    j["command"] = command;
    j["config_name"] = cfg.name;
    j["config_hash"] = config_hash(cfg);
    j["seed"] = cfg.seed;
    return j;
}

ordered_json angle_json(double rad) {
    return ordered_json{{"rad", rad}, {"deg", rad_to_deg(rad)}, {"arcsec", rad_to_arcsec(rad)}};
}

ordered_json optional_json(const std::optional<double> &v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json noise_json(const NoiseModel &n) {
    return ordered_json{{"visibility", n.visibility},
                        {"jitter_rad", n.jitter},
                        {"phase_drift_rad", n.phase_drift},
                        {"efficiency", n.efficiency}};
}

ordered_json generator_json(const GeneratorReport &g) {
    ordered_json j;
    j["scheme"] = scheme_name(g.scheme);
    j["m"] = g.m;
    j["l"] = g.l;
    j["probe"] = g.probe;
    j["delta_lz"] = g.delta_lz;
    j["delta_h_numeric"] = g.numeric;
    j["delta_h_analytic"] = g.analytic;
    j["delta_h_exact"] = g.exact;
    j["relative_deviation"] = g.relative_deviation;
    return j;
}

ordered_json hup_json(const HupResult &h) {
    return ordered_json{{"product", h.product}, {"bound", h.bound}, {"satisfied", h.satisfied}};
}

std::string dump(const ordered_json &j) {
    return j.dump(2) + "\n";
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string svg_open(double w, double h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(w) + "\" height=\"" + fixed(h) +
           "\" viewBox=\"0 0 " + fixed(w) + " " + fixed(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string svg_text(double x, double y, const std::string &s) {
    return "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" font-family=\"sans-serif\" font-size=\"12\">" + s +
           "</text>\n";
}

struct Frame {
    double x0, x1, y0, y1;
    double left = 60, top = 30, width = 560, height = 340;

    double px(double x) const {
        return left + (x - x0) / (x1 - x0) * width;
    }
    double py(double y) const {
        return top + height - (y - y0) / (y1 - y0) * height;
    }
    std::string axes() const {
        return "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(width) + "\" height=\"" +
               fixed(height) + "\" fill=\"none\" stroke=\"black\"/>\n";
    }
};

}  // namespace

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fringe_csv(std::span<const FringeRow> rows) {
    std::string out = "theta_rad,p_ideal,p_noisy_mean,p_noisy_sem,fit_curve\n";
    for (const FringeRow &r : rows) {
        out += csv_double(r.theta) + "," + csv_double(r.p_ideal) + "," + csv_double(r.p_noisy_mean) + "," +
               csv_double(r.p_noisy_sem) + "," + csv_double(r.fit_curve) + "\n";
    }
    return out;
}

std::string fringe_json(const ExperimentConfig &cfg, const FitReport &fit, std::size_t repeats) {
    ordered_json j = header(cfg, "fringe");
    j["m"] = cfg.m;
    j["l"] = cfg.l;
    j["nu"] = cfg.nu;
    j["repeats_per_point"] = repeats;
    j["expected_frequency"] = 4.0 * cfg.m * cfg.l;
    j["noise"] = noise_json(cfg.noise.model());
    ordered_json f;
    f["frequency"] = fit.frequency;
    f["relative_frequency_error"] = std::abs(fit.frequency / (4.0 * cfg.m * cfg.l) - 1.0);
    f["phi0"] = fit.phi0;
    f["visibility"] = fit.visibility;
    f["offset"] = fit.offset;
    f["chi2"] = fit.chi2;
    f["iterations"] = fit.iterations;
    f["points"] = fit.points;
    j["fit"] = f;
    if (cfg.theta_sweep) {
        const double span = cfg.theta_sweep->end.rad() - cfg.theta_sweep->start.rad();
        j["fringes_in_sweep"] = span * 4.0 * cfg.m * cfg.l / (2.0 * std::numbers::pi);
    }
    return dump(j);
}

std::string fringe_svg(std::span<const FringeRow> rows, const std::string &title) {
    if (rows.empty()) {
        return svg_open(680, 420) + "</svg>\n";
    }
    Frame f{rows.front().theta, rows.back().theta, 0.0, 1.0};
    if (f.x1 <= f.x0) {
        f.x1 = f.x0 + 1.0;
    }
    std::string s = svg_open(680, 420) + f.axes() + svg_text(f.left, 20, title);
    s += "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1\" points=\"";
    for (const FringeRow &r : rows) {
        s += fixed(f.px(r.theta)) + "," + fixed(f.py(r.fit_curve)) + " ";
    }
    s += "\"/>\n";
    for (const FringeRow &r : rows) {
        s += "<circle cx=\"" + fixed(f.px(r.theta)) + "\" cy=\"" + fixed(f.py(r.p_noisy_mean)) +
             "\" r=\"2\" fill=\"black\"/>\n";
    }
    s += svg_text(f.left + f.width / 2 - 30, f.top + f.height + 30, "theta (rad)");
    s += svg_text(8, f.top + f.height / 2, "P");
    return s + "</svg>\n";
}

std::string estimation_csv(const EstimationReport &r) {
    std::string out = "trial,jitter_rad,phase_rad,probability,count,nu,theta_hat_rad,error_rad\n";
    for (const TrialResult &t : r.trials) {
        out += std::to_string(t.index) + "," + csv_double(t.jitter) + "," + csv_double(t.phase) + "," +
               csv_double(t.probability) + "," + std::to_string(t.count) + "," + std::to_string(t.nu) + "," +
               csv_double(t.theta_hat) + "," + csv_double(t.theta_hat - r.theta_true) + "\n";
    }
    return out;
}

std::string estimation_json(const ExperimentConfig &cfg, const EstimationReport &r,
                            const std::optional<JitterCalibration> &calibration, const std::optional<HupResult> &hup) {
    ordered_json j = header(cfg, "estimate");
    j["m"] = r.m;
    j["l"] = r.l;
    j["nu"] = r.nu;
    j["trials"] = r.trials.size();
    j["theta_true"] = angle_json(r.theta_true);
    j["phi0_rad"] = r.phi0;
    j["noise"] = noise_json(r.noise);
    if (calibration) {
        j["jitter_calibration"] = ordered_json{{"jitter_rad", calibration->jitter},
                                               {"gap", calibration->gap},
                                               {"evaluations", calibration->evaluations}};
    }
    j["theta_mean"] = angle_json(r.mean);
    j["rmse_defined"] = r.rmse.has_value();
    j["rmse"] = r.rmse ? angle_json(*r.rmse) : ordered_json(nullptr);
    j["normalized_precision_rad"] = optional_json(r.normalized);
    j["crb"] = angle_json(r.crb);
    j["crb_normalized_rad"] = r.crb * std::sqrt(static_cast<double>(r.nu));
    j["gap"] = optional_json(r.gap);
    j["ideal_enhancement"] = r.ideal_enhancement;
    j["practical_enhancement"] = optional_json(r.practical_enhancement);
    if (hup) {
        j["hup"] = hup_json(*hup);
    }
    return dump(j);
}

std::string estimation_table(const EstimationReport &r) {
    std::ostringstream os;
    char buf[160];
    const auto line = [&](const char *label, const std::string &value) {
        std::snprintf(buf, sizeof buf, "  %-26s %s\n", label, value.c_str());
        os << buf;
    };
    const auto num = [](double v) {
        char b[40];
        std::snprintf(b, sizeof b, "%.6g", v);
        return std::string(b);
    };
    const auto ang = [&](double rad) {
        return num(rad) + " rad = " + num(rad_to_deg(rad)) + " deg = " + num(rad_to_arcsec(rad)) + " arcsec";
    };
    os << "(m, l) = (" << r.m << ", " << r.l << "), nu = " << r.nu << ", trials = " << r.trials.size() << "\n";
    line("theta true", ang(r.theta_true));
    line("theta mean", ang(r.mean));
    line("RMSE", r.rmse ? ang(*r.rmse) : "undefined (needs >= 2 trials)");
    line("RMSE * sqrt(nu)", r.normalized ? num(*r.normalized) + " rad" : "undefined");
    line("Cramer-Rao bound", ang(r.crb));
    line("gap factor", r.gap ? num(*r.gap) : "undefined");
    line("ideal enhancement 4ml", num(r.ideal_enhancement));
    line("practical enhancement", r.practical_enhancement ? num(*r.practical_enhancement) : "undefined");
    return os.str();
}

std::string scaling_csv(const ScalingReport &r) {
    std::string out = "m,l,fourml,rmse_norm,crb,gap\n";
    for (const ScalingPoint &p : r.points) {
        out += std::to_string(p.m) + "," + std::to_string(p.l) + "," + csv_double(p.fourml) + "," +
               csv_double(p.rmse_norm) + "," + csv_double(p.crb_norm) + "," + csv_double(p.gap) + "\n";
    }
    return out;
}

std::string scaling_json(const ExperimentConfig &cfg, const ScalingReport &r) {
    ordered_json j = header(cfg, "scaling");
    j["nu"] = cfg.nu;
    j["trials"] = cfg.trials;
    ordered_json pts = ordered_json::array();
    for (const ScalingPoint &p : r.points) {
        pts.push_back(ordered_json{{"m", p.m},
                                   {"l", p.l},
                                   {"fourml", p.fourml},
                                   {"rmse_norm", p.rmse_norm},
                                   {"crb_norm", p.crb_norm},
                                   {"gap", p.gap}});
    }
    j["points"] = pts;
    j["regression"] = ordered_json{{"x", "ln(4ml)"},
                                   {"y", "ln(rmse * sqrt(nu))"},
                                   {"slope", r.slope},
                                   {"intercept", r.intercept},
                                   {"intercept_vs_ml", r.intercept_vs_ml},
                                   {"implied_gap", std::exp(r.intercept)}};
    j["flatness_max_over_min"] = r.spread;
    return dump(j);
}

std::string scaling_svg(const ScalingReport &r) {
    if (r.points.empty()) {
        return svg_open(680, 420) + "</svg>\n";
    }
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const ScalingPoint &p : r.points) {
        x0 = std::min(x0, std::log10(p.fourml));
        x1 = std::max(x1, std::log10(p.fourml));
        for (double y : {p.rmse_norm, p.crb_norm}) {
            y0 = std::min(y0, std::log10(y));
            y1 = std::max(y1, std::log10(y));
        }
    }
    Frame f{x0 - 0.1, x1 + 0.1, y0 - 0.2, y1 + 0.2};
    std::string s = svg_open(680, 420) + f.axes() + svg_text(f.left, 20, "rmse * sqrt(nu) against 4ml (log-log)");
    s += "<line x1=\"" + fixed(f.px(f.x0)) + "\" y1=\"" + fixed(f.py(-f.x0)) + "\" x2=\"" + fixed(f.px(f.x1)) +
         "\" y2=\"" + fixed(f.py(-f.x1)) + "\" stroke=\"#c0392b\"/>\n";
    for (const ScalingPoint &p : r.points) {
        s += "<circle cx=\"" + fixed(f.px(std::log10(p.fourml))) + "\" cy=\"" + fixed(f.py(std::log10(p.rmse_norm))) +
             "\" r=\"3\" fill=\"black\"/>\n";
    }
    s += svg_text(f.left + f.width / 2 - 20, f.top + f.height + 30, "4ml");
    return s + "</svg>\n";
}

std::string trace_json(const ExperimentConfig &cfg, const TraceReport &r) {
    ordered_json j = header(cfg, "trace");
    j["m"] = cfg.m;
    j["l"] = cfg.l;
    j["theta_rad"] = cfg.theta_true ? cfg.theta_true->rad() : 0.0;
    j["dove"] = ordered_json{{"delta", cfg.dove.delta},
                             {"rho", cfg.dove.rho},
                             {"alpha0", cfg.dove.alpha0},
                             {"deflection_on", cfg.dove.deflection_on},
                             {"compensation_on", cfg.dove.compensation_on}};
    ordered_json st = ordered_json::array();
    for (const TraceStageReport &s : r.stages) {
        st.push_back(ordered_json{{"label", s.label},
                                  {"element", s.element},
                                  {"fidelity", s.fidelity},
                                  {"norm", s.norm},
                                  {"lz_mean", s.lz_mean}});
    }
    j["stages"] = st;
    j["min_fidelity"] = r.min_fidelity;
    j["final_visibility"] = r.final_visibility;
    j["probability_v"] = r.probability;
    j["passed"] = r.passed;
    return dump(j);
}

std::string qfi_json(const ExperimentConfig &cfg, const QfiReport &r) {
    ordered_json j = header(cfg, "qfi");
    j["m"] = cfg.m;
    j["l"] = cfg.l;
    j["switch"] = generator_json(r.switch_scheme);
    j["multipass"] = generator_json(r.multipass);
    j["qfi_switch_per_photon"] = r.qfi_switch;
    j["qfi_multipass_per_photon"] = r.qfi_multipass;
    j["fisher"] = ordered_json{{"per_photon_fi", r.fisher.per_photon_fi},
                               {"nu", r.fisher.nu},
                               {"total_fi", r.fisher.total_fi},
                               {"crb_rad", r.fisher.crb}};
    j["resource_count"] = r.resources;
    if (r.hup) {
        j["hup"] = hup_json(*r.hup);
    }
    j["notes"] = ordered_json::array(
        {"delta_h_analytic is 2m dLz + 2ml (switch) and 2m dLz (multipass); delta_h_exact is the standard deviation "
         "for a product probe, 2m sqrt(dLz^2 + l^2) for the switch",
         "the multipass QFI on an OAM superposition is only reachable with a measurement that resolves the OAM "
         "superposition, which is hard to implement in practice"});
    return dump(j);
}

void write_text_file(const std::string &dir, const std::string &name, const std::string &content) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::filesystem::path p = std::filesystem::path(dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        fail(ErrorKind::kConfig, "cannot write " + p.string());
    }
    out << content;
}

}  // namespace qswitch
