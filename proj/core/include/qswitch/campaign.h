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

#ifndef QSWITCH_CAMPAIGN_H_
#define QSWITCH_CAMPAIGN_H_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qswitch/config.h"
#include "qswitch/montecarlo.h"

namespace qswitch {

struct EstimationReport {
    int m = 0;
    int l = 0;
    double theta_true = 0.0;
    double phi0 = 0.0;
    std::int64_t nu = 0;
    NoiseModel noise;
    std::vector<TrialResult> trials;
    double mean = 0.0;
    /// Root mean square error about theta_true; needs at least 2 trials.
    std::optional<double> rmse;
    std::optional<double> normalized;  // rmse * sqrt(nu)
    double crb = 0.0;
    std::optional<double> gap;  // rmse / crb
    double ideal_enhancement = 0.0;
    std::optional<double> practical_enhancement;  // 4 m l / gap
};

/// Runs cfg.trials independent trials of (m, l) at cfg.theta_true on
/// `workers` threads. The report does not depend on the worker count.
EstimationReport run_campaign(const ExperimentConfig &cfg, int workers);

/// Same campaign with the noise model replaced.
EstimationReport run_campaign(const ExperimentConfig &cfg, const NoiseModel &noise, int workers);

struct JitterCalibration {
    double jitter = 0.0;
    double gap = 0.0;
    int evaluations = 0;
};

/// Finds the rotation jitter for which the fixed-seed campaign of cfg reports
/// the target gap factor. Bisection on the jitter with everything else
/// (including the random draws) held fixed.
JitterCalibration calibrate_jitter_to_gap(const ExperimentConfig &cfg, double target_gap, int workers);

struct ScalingPoint {
    int m = 0;
    int l = 0;
    double fourml = 0.0;
    double rmse_norm = 0.0;  // rmse * sqrt(nu)
    double crb_norm = 0.0;   // 1 / (4 m l)
    double gap = 0.0;
};

struct ScalingReport {
    std::vector<ScalingPoint> points;
    /// Least squares of ln(rmse_norm) on ln(4 m l).
    double slope = 0.0;
    /// At 4 m l = 1; the Cramer-Rao line has intercept 0 here.
    double intercept = 0.0;
    /// The same line written against ln(m l): intercept + slope ln 4.
    double intercept_vs_ml = 0.0;
    /// max / min of rmse_norm * 4 m l.
    double spread = 0.0;
};

/// One campaign per pair, each with cfg's seed, theta and noise.
ScalingReport scaling_study(std::span<const std::pair<int, int>> pairs, const ExperimentConfig &cfg, int workers);

}  // namespace qswitch

#endif  // QSWITCH_CAMPAIGN_H_
