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

#include "qswitch/optics.h"

#include <cmath>
#include <numbers>

namespace qswitch {

namespace {

// |out><in| with both kets written in the linear basis.
Eigen::Matrix2cd outer_linear(const PolarizationKet &out, const PolarizationKet &in) {
    const Eigen::Vector2cd o = out.in_basis(PolarizationBasis::kLinear).amp;
    const Eigen::Vector2cd i = in.in_basis(PolarizationBasis::kLinear).amp;
    return o * i.adjoint();
}

DovePrismModel rotated(DovePrismModel d, double angle) {
    d.alpha += angle;
    return d;
}

}  // namespace

void DovePrismModel::validate() const {
    if (!(amplitude_ratio > 0.0 && amplitude_ratio <= 1.0)) {
        fail(ErrorKind::kInvalidArgument, "Dove prism amplitude ratio must lie in (0, 1]");
    }
    if (!std::isfinite(alpha) || !std::isfinite(retardance)) {
        fail(ErrorKind::kInvalidArgument, "Dove prism angles must be finite");
    }
}

DovePrismModel DoveTrainModel::stationary() const {
    return {alpha0, retardance, amplitude_ratio, deflection};
}

DovePrismModel DoveTrainModel::rotatable() const {
    return {alpha0, retardance, amplitude_ratio, deflection};
}

LinearOp qplate_op(const QPlateModel &q) {
    if (q.order < 0) {
        fail(ErrorKind::kInvalidArgument, "Q-plate order must be non-negative");
    }
    // Circular indices: 0 = L, 1 = R. block(out, in).
    LinearOp::Block up = {WeylTerm{1.0, 0.0, q.order}};
    LinearOp::Block down = {WeylTerm{1.0, 0.0, -q.order}};
    return LinearOp("qplate(" + std::to_string(q.order) + ")", ActionKind::kPolOamCoupled,
                    PolarizationBasis::kCircular, {LinearOp::Block{}, down, up, LinearOp::Block{}}, true);
}

JonesMatrix dove_jones(const DovePrismModel &d) {
    d.validate();
    if (!d.deflection) {
        return {};
    }
    Eigen::Matrix2cd diag = Eigen::Matrix2cd::Zero();
    diag(0, 0) = 1.0;
    diag(1, 1) = std::polar(d.amplitude_ratio, d.retardance);
    return {rotation_matrix(-d.alpha) * diag * rotation_matrix(d.alpha), PolarizationBasis::kLinear};
}

LinearOp dove_pair_op(double theta_rel, const DovePrismModel &stationary, const DovePrismModel &rotatable) {
    const JonesMatrix j = dove_jones(rotated(rotatable, theta_rel)) * dove_jones(stationary);
    return LinearOp::jones_times("dove_pair(" + std::to_string(theta_rel) + ")", j,
                                 WeylTerm{1.0, 2.0 * theta_rel, 0});
}

LinearOp dove_pair_return_op(double theta_rel, const DovePrismModel &stationary, const DovePrismModel &rotatable,
                             bool compensation) {
    const double advance = compensation ? std::numbers::pi / 2.0 : 0.0;
    const JonesMatrix flipped_frame =
        dove_jones(rotated(stationary, advance)) * dove_jones(rotated(rotatable, theta_rel + advance));
    const JonesMatrix flip = hrp_flip_jones();
    const JonesMatrix lab{flip.m * flipped_frame.m * flip.m.adjoint(), PolarizationBasis::kLinear};
    return LinearOp::jones_times("dove_pair_return(" + std::to_string(theta_rel) + ")", lab,
                                 WeylTerm{1.0, 2.0 * theta_rel, 0});
}

JonesMatrix qwp_fr_suite_jones(SuiteDirection direction) {
    using K = PolarizationKet;
    const Eigen::Matrix2cd forward = outer_linear(K::V(), K::R()) + outer_linear(K::H(), K::L());
    switch (direction) {
        case SuiteDirection::kForward:
            return {forward, PolarizationBasis::kLinear};
        case SuiteDirection::kBackward:
            return {forward.adjoint(), PolarizationBasis::kLinear};
        case SuiteDirection::kReturnPass:
            return {outer_linear(K::R(), K::H()) + outer_linear(K::L(), K::V()), PolarizationBasis::kLinear};
    }
    return {};
}

LinearOp qwp_fr_suite_op(SuiteDirection direction) {
    const char *name = direction == SuiteDirection::kForward    ? "qwp_fr(forward)"
                       : direction == SuiteDirection::kBackward ? "qwp_fr(backward)"
                                                                : "qwp_fr(return)";
    return LinearOp::jones(name, qwp_fr_suite_jones(direction), true);
}

JonesMatrix hrp_flip_jones() {
    using K = PolarizationKet;
    return {outer_linear(K::V(), K::H()) - outer_linear(K::H(), K::V()), PolarizationBasis::kLinear};
}

LinearOp hrp_flip_op() {
    return LinearOp::jones("hrp_flip", hrp_flip_jones(), true);
}

LinearOp phase_offset_op(double phi0) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = std::polar(1.0, phi0 + std::numbers::pi);
    return LinearOp::jones("phase_offset(" + std::to_string(phi0) + ")", {m, PolarizationBasis::kCircular}, true);
}

}  // namespace qswitch
