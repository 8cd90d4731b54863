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

#include "qswitch/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qswitch/error.h"

namespace qswitch {

namespace {

constexpr double kBranchSigmas = 6.0;
constexpr double kExtremumGuard = 1e-6;

double standard_normal(std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return n(rng);
}

}  // namespace

void NoiseModel::validate() const {
    if (!(visibility > 0.0 && visibility <= 1.0)) {
        fail(ErrorKind::kInvalidArgument, "visibility must lie in (0, 1]");
    }
    if (!(jitter >= 0.0) || !std::isfinite(jitter)) {
        fail(ErrorKind::kInvalidArgument, "jitter must be a finite non-negative angle");
    }
    if (!(phase_drift >= 0.0) || !std::isfinite(phase_drift)) {
        fail(ErrorKind::kInvalidArgument, "phase drift must be a finite non-negative angle");
    }
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        fail(ErrorKind::kInvalidArgument, "efficiency must lie in (0, 1]");
    }
}

double noisy_probability(double theta, int m, int l, double phi0, const NoiseModel &noise, const TrialDraws &draws) {
    const double phase = 4.0 * m * l * (theta + draws.jitter) + phi0 + draws.phase;
    const double p = 0.5 * (1.0 - noise.visibility * std::cos(phase));
    if (noise.efficiency == 1.0) {
        return p;
    }
    const double e = noise.efficiency * p;
    return e / (e + (1.0 - p));
}

std::int64_t sample_counts(double p, std::int64_t nu, std::mt19937_64 &rng) {
    if (nu < 1) {
        fail(ErrorKind::kInvalidArgument, "photon count must be at least 1");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        fail(ErrorKind::kInvalidArgument, "probability must lie in [0, 1]");
    }
    if (p == 0.0) {
        return 0;
    }
    if (p == 1.0) {
        return nu;
    }
    const double n = static_cast<double>(nu);
    const double var = n * p * (1.0 - p);
    if (var <= kNormalApproxThreshold) {
        std::binomial_distribution<std::int64_t> b(nu, p);
        return b(rng);
    }
    const std::int64_t k = std::llround(n * p + standard_normal(rng) * std::sqrt(var));
    return std::clamp<std::int64_t>(k, 0, nu);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

int branch_for(int m, int l, double theta_nominal, double phi0) {
    const double psi = 4.0 * m * l * theta_nominal + phi0;
    const double turns = psi / std::numbers::pi;
    const double nearest = std::round(turns);
    if (std::abs(turns - nearest) * std::numbers::pi < kExtremumGuard) {
        fail(ErrorKind::kDegeneratePoint,
             "operating phase sits at a fringe extremum; the inversion has zero slope there");
    }
    return static_cast<int>(std::floor(turns));
}

Calibration make_calibration(int m, int l, double theta_nominal, double phi0, const NoiseModel &noise) {
    return {m, l, phi0, noise.visibility, noise.efficiency, branch_for(m, l, theta_nominal, phi0)};
}

double estimate_theta_from_probability(double p_hat, double nu, const Calibration &calib) {
    const double eta = calib.efficiency;
    const double p = eta == 1.0 ? p_hat : p_hat / (eta * (1.0 - p_hat) + p_hat);
    double c = (1.0 - 2.0 * p) / calib.visibility;
    if (std::abs(c) > 1.0) {
        const double sigma_c = 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / nu) / calib.visibility;
        if (std::abs(c) - 1.0 > kBranchSigmas * sigma_c) {
            fail(ErrorKind::kOutOfBranch, "measured probability " + std::to_string(p_hat) +
                                              " lies beyond the fringe contrast by more than 6 sigma");
        }
        c = std::clamp(c, -1.0, 1.0);
    }
    const int n = calib.half_period;
    const double a = std::acos(c);
    const double psi = (n % 2 == 0) ? n * std::numbers::pi + a : (n + 1) * std::numbers::pi - a;
    return (psi - calib.phi0) / (4.0 * calib.m * calib.l);
}

double estimate_theta_point(std::int64_t k, std::int64_t nu, const Calibration &calib) {
    if (nu < 1 || k < 0 || k > nu) {
        fail(ErrorKind::kInvalidArgument, "count must satisfy 0 <= k <= nu with nu >= 1");
    }
    const double n = static_cast<double>(nu);
    const double p_hat = std::clamp(static_cast<double>(k) / n, 0.5 / n, 1.0 - 0.5 / n);
    return estimate_theta_from_probability(p_hat, n, calib);
}

TrialResult simulate_count(const TrialSpec &spec, std::uint64_t index) {
    std::mt19937_64 rng = trial_rng(spec.seed, index);
    TrialDraws d;
    d.jitter = spec.noise.jitter * standard_normal(rng);
    d.phase = spec.noise.phase_drift * standard_normal(rng);
    TrialResult r;
    r.index = index;
    r.jitter = d.jitter;
    r.phase = d.phase;
    r.probability = noisy_probability(spec.theta, spec.m, spec.l, spec.phi0, spec.noise, d);
    r.nu = spec.nu;
    r.count = sample_counts(r.probability, spec.nu, rng);
    return r;
}

TrialResult run_trial(const TrialSpec &spec, const Calibration &calib, std::uint64_t index) {
    TrialResult r = simulate_count(spec, index);
    r.theta_hat = estimate_theta_point(r.count, spec.nu, calib);
    return r;
}

}  // namespace qswitch
