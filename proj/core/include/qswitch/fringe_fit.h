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

#ifndef QSWITCH_FRINGE_FIT_H_
#define QSWITCH_FRINGE_FIT_H_

#include <cstdint>
#include <span>

namespace qswitch {

struct SweepPoint {
    double theta = 0.0;
    double p_hat = 0.0;  // measured probability k / nu
    double nu = 1.0;     // photons behind p_hat, sets the weight
};

SweepPoint sweep_point_from_counts(double theta, std::int64_t k, std::int64_t nu);

struct FitFreeParams {
    bool frequency = true;
    bool phi0 = true;
    bool visibility = true;
    bool offset = false;
};

struct FitReport {
    double frequency = 0.0;  // expected 4 m l
    double phi0 = 0.0;       // wrapped to (-pi, pi]
    double visibility = 1.0;
    double offset = 1.0;
    double chi2 = 0.0;
    int iterations = 0;
    std::size_t points = 0;
};

inline constexpr int kFitMaxIterations = 200;

/// Weighted damped least squares of P_hat against
/// (offset - V cos(f theta + phi0)) / 2, with weights nu / (P~ (1 - P~)),
/// P~ = (nu P_hat + 1/2) / (nu + 1).
///
/// The frequency starts at 4 m l, phi0 at the phase of the discrete Fourier
/// component at that frequency, V at the max - min contrast. Needs at least
/// 8 points covering one period of the expected fringe.
FitReport fit_fringe(std::span<const SweepPoint> sweep, int m, int l, const FitFreeParams &free = {});

}  // namespace qswitch

#endif  // QSWITCH_FRINGE_FIT_H_
