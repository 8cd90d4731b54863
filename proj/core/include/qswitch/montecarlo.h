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

#ifndef QSWITCH_MONTECARLO_H_
#define QSWITCH_MONTECARLO_H_

#include <cstdint>
#include <random>

namespace qswitch {

struct NoiseModel {
    double visibility = 1.0;   // fringe contrast V in (0, 1]
    double jitter = 0.0;       // rotation jitter sigma_j, rad, one draw per trial
    double phase_drift = 0.0;  // sigma on phi0, rad, one draw per trial
    double efficiency = 1.0;   // detector-arm imbalance eta in (0, 1]

    void validate() const;
    bool is_ideal() const {
        return visibility == 1.0 && jitter == 0.0 && phase_drift == 0.0 && efficiency == 1.0;
    }
};

/// Per-trial perturbations, already scaled (rad).
struct TrialDraws {
    double jitter = 0.0;
    double phase = 0.0;
};

/// P = (1 - V cos(4 m l (theta + j) + phi0 + d)) / 2, then
/// P <- eta P / (eta P + 1 - P).
double noisy_probability(double theta, int m, int l, double phi0, const NoiseModel &noise, const TrialDraws &draws);

/// Above this value of nu P (1 - P) the count is drawn from the normal
/// approximation N(nu P, nu P (1 - P)), rounded and clamped to [0, nu]. The
/// relative error of the variance is O(1 / (nu P (1 - P))).
inline constexpr double kNormalApproxThreshold = 1e6;

/// k ~ Binomial(nu, P).
std::int64_t sample_counts(double p, std::int64_t nu, std::mt19937_64 &rng);

/// Generator for one trial; depends only on (seed, index).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// What the estimator knows: the offset, the dressing and which monotonic
/// half-period [n pi, (n + 1) pi] of the phase 4 m l theta + phi0 holds.
struct Calibration {
    int m = 2;
    int l = 1;
    double phi0 = 0.0;
    double visibility = 1.0;
    double efficiency = 1.0;
    int half_period = 0;
};

/// Half-period index of the nominal phase 4 m l theta + phi0. Fails with
/// DegeneratePoint when the phase is within 1e-6 of a fringe extremum.
int branch_for(int m, int l, double theta_nominal, double phi0);

Calibration make_calibration(int m, int l, double theta_nominal, double phi0, const NoiseModel &noise);

/// Single-point inversion of the fringe law inside the hinted half-period.
/// P_hat = k / nu is clamped to [1/(2 nu), 1 - 1/(2 nu)] first.
double estimate_theta_point(std::int64_t k, std::int64_t nu, const Calibration &calib);

/// Same inversion from a probability.
double estimate_theta_from_probability(double p_hat, double nu, const Calibration &calib);

struct TrialResult {
    std::uint64_t index = 0;
    double jitter = 0.0;
    double phase = 0.0;
    double probability = 0.0;
    std::int64_t count = 0;
    std::int64_t nu = 0;
    double theta_hat = 0.0;
};

struct TrialSpec {
    int m = 2;
    int l = 1;
    double theta = 0.0;
    double phi0 = 0.0;
    std::int64_t nu = 1;
    NoiseModel noise;
    std::uint64_t seed = 0;
};

/// Draw order inside a trial is fixed: jitter, phase, then the count.
/// theta_hat is left at 0.
TrialResult simulate_count(const TrialSpec &spec, std::uint64_t index);

/// simulate_count followed by the single-point inversion.
TrialResult run_trial(const TrialSpec &spec, const Calibration &calib, std::uint64_t index);

}  // namespace qswitch

#endif  // QSWITCH_MONTECARLO_H_
