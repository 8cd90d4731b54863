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

#ifndef QSWITCH_SWITCH_H_
#define QSWITCH_SWITCH_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qswitch/joint_state.h"
#include "qswitch/linear_op.h"
#include "qswitch/optics.h"

namespace qswitch {

/// m: rotation multiplicity (m/2 Dove pairs per pass), l: Q-plate order,
/// theta: unknown rotation in (-pi, pi), phi0: interferometric offset.
struct SwitchParams {
    int m = 2;
    int l = 1;
    double theta = 0.0;
    double phi0 = 0.0;

    /// Checks m >= 1, l >= 0, theta in (-pi, pi); the optical train also
    /// needs m even.
    void validate(bool optical_train) const;
};

/// W = D_l^dagger D_{2m theta} D_l (x) |0><0| + D_l D_{2m theta} D_l^dagger (x) |1><1|,
/// control |0> = |L>, |1> = |R>.
LinearOp build_W(const SwitchParams &p);

/// W_QS = D_{2m theta} D_{2l} (x) |0><0| + D_{2l} D_{2m theta} (x) |1><1|.
LinearOp build_WQS(const SwitchParams &p);

inline constexpr std::array<std::string_view, 8> kStageLabels = {
    "q1", "suite1", "dove_fwd", "hrp", "dove_bwd", "suite1_rev", "q2", "final"};

struct TraceStage {
    std::string label;
    std::string element;
    JointState state;
};

struct StateTrace {
    std::vector<TraceStage> stages;
};

struct RoundTrip {
    JointState final_state;
    StateTrace trace;
};

/// The optical train one element at a time: Q-plate, QWP1-FR1, m/2 Dove
/// pairs, hollow-roof-prism flip, the pairs in reverse, the return pass
/// through FR1-QWP1, the Q-plate again and the phi0 phase plate.
RoundTrip run_roundtrip(const SwitchParams &p, const DoveTrainModel &optics, const JointState &input);

/// Stage states of the ideal train for input |H> (x) |Phi>, written out in
/// closed form (no operator application). Same order as kStageLabels.
///
/// The q2 state keeps the relative minus sign carried over from dove_bwd;
/// the phase plate removes it, so `final` is
/// (e^{-2iml theta}|L> + e^{2iml theta} e^{i phi0}|R>)/sqrt2 (x) D_{2m theta}|Phi>
/// up to a global phase.
std::vector<JointState> closed_form_states(const SwitchParams &p, const JointState &input);

/// Probability of the |V> analyzer port for the state leaving the train.
/// The OAM factor is traced out.
double project_probability(const JointState &final_state);

/// Control-qubit analyzer for the abstract operators: apply exp(i phi0) to
/// |1>, project onto (|1> - |0>)/sqrt2. For (|0> + e^{i Psi}|1>)/sqrt2 this
/// is (1 - cos(Psi + phi0)) / 2.
double control_probability(const JointState &state, double phi0);

/// arg(rho_10): phase of |1> = |R> relative to |0> = |L> in the reduced state.
double relative_control_phase(const JointState &state);

/// 2|rho_LR| / tr(rho): contrast of the analyzer signal as phi0 is scanned.
double fringe_visibility(const JointState &state);

struct EquivalenceReport {
    std::vector<double> thetas;
    std::vector<double> p_w;
    std::vector<double> p_wqs;
    double max_deviation = 0.0;
};

/// Compares the analyzer statistics of W and W_QS on |+> (x) probe.
EquivalenceReport equivalence_check(int m, int l, double phi0, std::span<const double> thetas,
                                    std::span<const OamAmplitude> probe);
EquivalenceReport equivalence_check(const SwitchParams &p);

/// Window wide enough for shifts of 2l around the given OAM support.
OamWindow window_for(int l, int support_min, int support_max, int guard = kDefaultGuard);

}  // namespace qswitch

#endif  // QSWITCH_SWITCH_H_
