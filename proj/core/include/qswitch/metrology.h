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

#ifndef QSWITCH_METROLOGY_H_
#define QSWITCH_METROLOGY_H_

#include <functional>
#include <string>

#include "qswitch/joint_state.h"
#include "qswitch/linear_op.h"

namespace qswitch {

/// theta -> U(theta).
using OperatorFamily = std::function<LinearOp(double)>;

/// theta -> P(theta), a single-outcome probability law.
using ProbabilityLaw = std::function<double(double)>;

inline constexpr double kDefaultGeneratorStep = 1e-5;
inline constexpr double kMinGeneratorStep = 1e-7;
inline constexpr double kMaxGeneratorStep = 1e-3;

/// h psi for the finite-difference generator h = i (dU/dtheta) U^dagger.
///
/// Central difference at `step`; when halving the step moves the result by
/// more than 1e-9 relative, the Richardson combination (4 D(h/2) - D(h)) / 3
/// is returned instead.
JointState apply_generator(const OperatorFamily &u, double theta, double step, const JointState &psi);

/// Dense generator on the interior basis states that keep U^dagger inside the
/// window, in the operator's polarization basis (linear for basis-free ops).
/// Index order is pol * n + (k - k_min) over that sub-range.
Eigen::MatrixXcd generator_numeric(const OperatorFamily &u, double theta, double step, const OamWindow &window);

/// Delta h on psi = U(theta) probe, from the finite-difference generator.
double generator_sd(const OperatorFamily &u, const JointState &probe, double theta, double step);

enum class Scheme { kSwitch, kMultipass };

std::string_view scheme_name(Scheme s);

struct GeneratorReport {
    Scheme scheme = Scheme::kSwitch;
    int m = 0;
    int l = 0;
    double delta_lz = 0.0;
    double numeric = 0.0;
    /// 2m dLz + 2ml (switch) or 2m dLz (multipass).
    double analytic = 0.0;
    /// Exact SD for a product probe: 2m sqrt(dLz^2 + l^2) (switch), 2m dLz (multipass).
    double exact = 0.0;
    double relative_deviation = 0.0;  // |numeric - analytic| / analytic, 0 when both vanish
    std::string probe;
};

/// Probe must be a balanced control (|L>, |R> equally weighted) times an OAM
/// distribution. The additive form is exact for OAM eigenstates and an upper
/// bound otherwise.
GeneratorReport switch_generator_sd(const JointState &probe, int m, int l, double step = kDefaultGeneratorStep);

GeneratorReport multipass_generator_sd(const JointState &probe, int m, double step = kDefaultGeneratorStep);

/// |+> (x) sum_k c_k |k> on a window wide enough for the switch.
JointState make_probe(std::span<const OamAmplitude> oam, int l);

struct HupResult {
    double product = 0.0;
    double bound = 0.5;
    bool satisfied = false;
};

/// delta_theta * delta_h >= (1 - slack) / 2.
HupResult hup_check(double delta_theta, double delta_h, double slack = 0.0);

/// P(theta) = (1 - V cos(4 m l theta + phi0)) / 2.
ProbabilityLaw fringe_law(int m, int l, double phi0, double visibility = 1.0);

/// (dP/dtheta)^2 / (P (1 - P)) with a central difference of `step`.
double classical_fi(const ProbabilityLaw &law, double theta, double step = 1e-6);

/// 1 / (4 sqrt(nu) m l).
double crb(int m, int l, double nu);

/// N_g = 2 (m + l).
int resource_count(int m, int l);

/// 4 Var(h) on a pure state.
double qfi_pure(double delta_h);

struct FisherReport {
    double per_photon_fi = 0.0;
    double nu = 0.0;
    double total_fi = 0.0;
    double crb = 0.0;  // 1 / sqrt(total_fi)
};

FisherReport fisher_report(const ProbabilityLaw &law, double theta, double nu);

/// Operating point where 4 m l theta + phi0 = -pi/2 (mod 2 pi).
double quadrature_phi0(int m, int l, double theta);

}  // namespace qswitch

#endif  // QSWITCH_METROLOGY_H_
