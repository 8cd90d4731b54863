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

#include "qswitch/campaign.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "qswitch/metrology.h"

namespace qswitch {

namespace {

constexpr int kMaxBisections = 200;
constexpr int kMaxDoublings = 64;

std::vector<TrialResult> run_trials(const TrialSpec &spec, const Calibration &calib, int trials, int workers) {
    const auto n = static_cast<std::size_t>(trials);
    std::vector<TrialResult> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = run_trial(spec, calib, i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::clamp(workers, 1, trials);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
    }
    for (const std::exception_ptr &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

}  // namespace

EstimationReport run_campaign(const ExperimentConfig &cfg, const NoiseModel &noise, int workers) {
    cfg.validate();
    noise.validate();
    if (!cfg.theta_true) {
        fail(ErrorKind::kConfig, "field theta_true: an estimation campaign needs theta_true");
    }
    EstimationReport r;
    r.m = cfg.m;
    r.l = cfg.l;
    r.theta_true = cfg.theta_true->rad();
    r.phi0 = cfg.phi0_for(r.theta_true);
    r.nu = cfg.nu;
    r.noise = noise;

    const TrialSpec spec{cfg.m, cfg.l, r.theta_true, r.phi0, cfg.nu, noise, cfg.seed};
    const Calibration calib = make_calibration(cfg.m, cfg.l, r.theta_true, r.phi0, noise);
    r.trials = run_trials(spec, calib, cfg.trials, workers);

    double sum = 0.0;
    double sq = 0.0;
    for (const TrialResult &t : r.trials) {
        sum += t.theta_hat;
        const double e = t.theta_hat - r.theta_true;
        sq += e * e;
    }
    const double n = static_cast<double>(r.trials.size());
    r.mean = sum / n;
    r.crb = crb(cfg.m, cfg.l, static_cast<double>(cfg.nu));
    r.ideal_enhancement = 4.0 * cfg.m * cfg.l;
    if (r.trials.size() >= 2) {
        r.rmse = std::sqrt(sq / n);
        r.normalized = *r.rmse * std::sqrt(static_cast<double>(cfg.nu));
        r.gap = *r.rmse / r.crb;
        r.practical_enhancement = r.ideal_enhancement / *r.gap;
    }
    return r;
}

EstimationReport run_campaign(const ExperimentConfig &cfg, int workers) {
    NoiseModel noise = cfg.noise.model();
    if (cfg.noise.target_gap) {
        noise.jitter = calibrate_jitter_to_gap(cfg, *cfg.noise.target_gap, workers).jitter;
    }
    return run_campaign(cfg, noise, workers);
}

JitterCalibration calibrate_jitter_to_gap(const ExperimentConfig &cfg, double target_gap, int workers) {
    if (cfg.trials < 2) {
        fail(ErrorKind::kConfig, "field trials: gap calibration needs at least 2 trials");
    }
    if (!(target_gap >= 1.0)) {
        fail(ErrorKind::kInvalidArgument, "target gap factor must be at least 1");
    }
    NoiseModel noise = cfg.noise.model();
    JitterCalibration out;
    const auto gap_at = [&](double jitter) {
        noise.jitter = jitter;
        ++out.evaluations;
        return *run_campaign(cfg, noise, workers).gap;
    };
    const double g0 = gap_at(0.0);
    if (g0 >= target_gap) {
        out.jitter = 0.0;
        out.gap = g0;
        return out;
    }
    const double crb_rad = crb(cfg.m, cfg.l, static_cast<double>(cfg.nu));
    double lo = 0.0;
    double hi = crb_rad * target_gap;
    double g_hi = gap_at(hi);
    for (int i = 0; g_hi < target_gap; ++i) {
        if (i == kMaxDoublings) {
            fail(ErrorKind::kNonConvergence, "no jitter reaches the target gap factor");
        }
        lo = hi;
        hi *= 2.0;
        g_hi = gap_at(hi);
    }
    double best = hi;
    double best_gap = g_hi;
    for (int i = 0; i < kMaxBisections && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double g = gap_at(mid);
        if (std::abs(g - target_gap) < std::abs(best_gap - target_gap)) {
            best = mid;
            best_gap = g;
        }
        if (std::abs(g - target_gap) <= 1e-12 * target_gap) {
            break;
        }
        (g < target_gap ? lo : hi) = mid;
    }
    out.jitter = best;
    out.gap = best_gap;
    return out;
}

ScalingReport scaling_study(std::span<const std::pair<int, int>> pairs, const ExperimentConfig &cfg, int workers) {
    if (pairs.size() < 3) {
        fail(ErrorKind::kInsufficientPairs,
             "scaling regression needs at least 3 (m, l) pairs, got " + std::to_string(pairs.size()));
    }
    if (cfg.trials < 2) {
        fail(ErrorKind::kConfig, "field trials: a scaling study needs at least 2 trials per pair");
    }
    ScalingReport r;
    for (const auto &[m, l] : pairs) {
        ExperimentConfig c = cfg;
        c.m = m;
        c.l = l;
        const EstimationReport e = run_campaign(c, workers);
        ScalingPoint p;
        p.m = m;
        p.l = l;
        p.fourml = 4.0 * m * l;
        p.rmse_norm = *e.normalized;
        p.crb_norm = 1.0 / p.fourml;
        p.gap = *e.gap;
        r.points.push_back(p);
    }
    const double n = static_cast<double>(r.points.size());
    double sx = 0.0;
    double sy = 0.0;
    for (const ScalingPoint &p : r.points) {
        sx += std::log(p.fourml);
        sy += std::log(p.rmse_norm);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double lo = INFINITY;
    double hi = 0.0;
    for (const ScalingPoint &p : r.points) {
        const double dx = std::log(p.fourml) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.rmse_norm) - my);
        const double flat = p.rmse_norm * p.fourml;
        lo = std::min(lo, flat);
        hi = std::max(hi, flat);
    }
    if (!(sxx > 0.0)) {
        fail(ErrorKind::kInsufficientPairs, "scaling regression needs at least two distinct values of 4ml");
    }
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.intercept_vs_ml = r.intercept + r.slope * std::log(4.0);
    r.spread = hi / lo;
    return r;
}

}  // namespace qswitch
