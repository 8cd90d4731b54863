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

#include "qswitch/switch.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qswitch {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr int kH = 0;
constexpr int kV = 1;
constexpr int kL = 0;
constexpr int kR = 1;

WeylTerm shift_term(int delta) {
    return WeylTerm{1.0, 0.0, delta};
}

WeylTerm rotation_term(double phi) {
    return WeylTerm{1.0, phi, 0};
}

LinearOp dove_stage(const SwitchParams &p, const DoveTrainModel &optics, bool forward) {
    LinearOp out = LinearOp::identity();
    const DovePrismModel st = optics.stationary();
    const DovePrismModel rot = optics.rotatable();
    for (int i = 0; i < p.m / 2; ++i) {
        const LinearOp pair =
            forward ? dove_pair_op(p.theta, st, rot) : dove_pair_return_op(p.theta, st, rot, optics.compensation);
        out = pair * out;
    }
    return out;
}

void check_stage(const std::string &label, const JointState &before, const JointState &after, bool unitary) {
    if (!unitary) {
        return;
    }
    const double nb = before.norm_squared();
    const double na = after.norm_squared();
    if (std::abs(na - nb) > kNormTolerance * std::max(1.0, nb)) {
        fail(ErrorKind::kStageMismatch, "stage " + label + " changed the norm from " + std::to_string(nb) + " to " +
                                            std::to_string(na));
    }
}

}  // namespace

void SwitchParams::validate(bool optical_train) const {
    if (m < 1) {
        fail(ErrorKind::kInvalidArgument, "m must be at least 1");
    }
    if (optical_train && m % 2 != 0) {
        fail(ErrorKind::kInvalidArgument, "the Dove prism train needs an even m (m/2 pairs)");
    }
    if (l < 0) {
        fail(ErrorKind::kInvalidArgument, "l must be non-negative");
    }
    if (!(theta > -std::numbers::pi && theta < std::numbers::pi)) {
        fail(ErrorKind::kInvalidArgument, "theta must lie in (-pi, pi)");
    }
    if (!std::isfinite(phi0)) {
        fail(ErrorKind::kInvalidArgument, "phi0 must be finite");
    }
}

LinearOp build_W(const SwitchParams &p) {
    p.validate(false);
    const WeylTerm d = rotation_term(2.0 * p.m * p.theta);
    const WeylTerm up = shift_term(p.l);
    const WeylTerm down = shift_term(-p.l);
    return LinearOp::controlled("W", {down.after(d.after(up))}, {up.after(d.after(down))}, true);
}

LinearOp build_WQS(const SwitchParams &p) {
    p.validate(false);
    const WeylTerm d = rotation_term(2.0 * p.m * p.theta);
    const WeylTerm s = shift_term(2 * p.l);
    return LinearOp::controlled("W_QS", {d.after(s)}, {s.after(d)}, true);
}

RoundTrip run_roundtrip(const SwitchParams &p, const DoveTrainModel &optics, const JointState &input) {
    p.validate(true);
    if (!input.is_normalized()) {
        fail(ErrorKind::kUnnormalizedState, "round trip input must be normalized");
    }
    const std::array<std::pair<LinearOp, std::string>, 8> stages = {{
        {qplate_op({p.l}), "Q-plate"},
        {qwp_fr_suite_op(SuiteDirection::kForward), "QWP1-FR1"},
        {dove_stage(p, optics, true), "Dove pairs (forward)"},
        {hrp_flip_op(), "FR2-QWP2-HRP-QWP2-FR2"},
        {dove_stage(p, optics, false), "Dove pairs (return)"},
        {qwp_fr_suite_op(SuiteDirection::kReturnPass), "FR1-QWP1"},
        {qplate_op({p.l}), "Q-plate"},
        {phase_offset_op(p.phi0), "phase plate"},
    }};
    StateTrace trace;
    trace.stages.reserve(stages.size());
    JointState current = input;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const std::string label(kStageLabels[i]);
        JointState next = apply(stages[i].first, current);
        check_stage(label, current, next, stages[i].first.is_unitary());
        trace.stages.push_back({label, stages[i].second, next});
        current = std::move(next);
    }
    for (std::size_t i = 0; i < kStageLabels.size(); ++i) {
        if (trace.stages[i].label != kStageLabels[i]) {
            fail(ErrorKind::kStageMismatch, "trace out of order at " + trace.stages[i].label);
        }
    }
    return {current, std::move(trace)};
}

std::vector<JointState> closed_form_states(const SwitchParams &p, const JointState &input) {
    p.validate(true);
    const JointState in = input.in_basis(PolarizationBasis::kLinear);
    const OamWindow &w = in.window();
    for (int k = w.l_min(); k <= w.l_max(); ++k) {
        if (std::abs(in.amp(kV, k)) > kSupportEpsilon) {
            fail(ErrorKind::kInvalidArgument, "closed-form stage states need an |H> input");
        }
    }
    const std::size_t n = w.size();
    const double s2 = 1.0 / std::sqrt(2.0);
    const double pass = p.m * p.theta;
    const double alpha = p.m * p.l * p.theta;
    const auto rot = [](double phi, int k) { return std::polar(1.0, -phi * static_cast<double>(k)); };

    // Amplitude of |pol>|k> at each stage, from Phi(k) = <H, k|input>.
    std::vector<std::vector<cplx>> amps(8, std::vector<cplx>(2 * n, 0.0));
    std::array<PolarizationBasis, 8> bases = {PolarizationBasis::kCircular, PolarizationBasis::kLinear,
                                              PolarizationBasis::kLinear,   PolarizationBasis::kLinear,
                                              PolarizationBasis::kLinear,   PolarizationBasis::kCircular,
                                              PolarizationBasis::kCircular, PolarizationBasis::kCircular};
    const auto put = [&](int stage, int pol, int k, cplx a) {
        if (!w.is_interior(k)) {
            fail(ErrorKind::kShiftIntoGuardBand,
                 "stage " + std::string(kStageLabels[stage]) + " reaches OAM " + std::to_string(k));
        }
        amps[stage][pol * n + w.offset(k)] += a;
    };
    const int l = p.l;
    for (int k = w.l_min(); k <= w.l_max(); ++k) {
        const cplx c = in.amp(kH, k);
        if (std::abs(c) <= kSupportEpsilon) {
            continue;
        }
        const cplx h = c * s2;
        put(0, kR, k + l, h);
        put(0, kL, k - l, h);
        put(1, kV, k + l, h);
        put(1, kH, k - l, h);
        put(2, kV, k + l, h * rot(pass, k + l));
        put(2, kH, k - l, h * rot(pass, k - l));
        put(3, kH, k + l, -h * rot(pass, k + l));
        put(3, kV, k - l, h * rot(pass, k - l));
        put(4, kH, k + l, -h * rot(2.0 * pass, k + l));
        put(4, kV, k - l, h * rot(2.0 * pass, k - l));
        put(5, kR, k + l, -h * rot(2.0 * pass, k + l));
        put(5, kL, k - l, h * rot(2.0 * pass, k - l));
        const cplx d = h * rot(2.0 * pass, k);
        put(6, kL, k, -std::polar(1.0, -2.0 * alpha) * d);
        put(6, kR, k, std::polar(1.0, 2.0 * alpha) * d);
        put(7, kL, k, std::polar(1.0, -2.0 * alpha) * d);
        put(7, kR, k, std::polar(1.0, 2.0 * alpha + p.phi0) * d);
    }
    std::vector<JointState> out;
    out.reserve(8);
    for (std::size_t i = 0; i < 8; ++i) {
        out.emplace_back(w, bases[i], std::move(amps[i]), true);
    }
    return out;
}

double project_probability(const JointState &final_state) {
    const Eigen::Matrix2cd rho = reduced_polarization(final_state, PolarizationBasis::kLinear);
    return std::clamp(rho(kV, kV).real(), 0.0, 1.0);
}

double control_probability(const JointState &state, double phi0) {
    const Eigen::Matrix2cd rho = reduced_polarization(state, PolarizationBasis::kCircular);
    const double p = 0.5 - (rho(kR, kL) * std::polar(1.0, phi0)).real();
    return std::clamp(p, 0.0, 1.0);
}

double relative_control_phase(const JointState &state) {
    const Eigen::Matrix2cd rho = reduced_polarization(state, PolarizationBasis::kCircular);
    return std::arg(rho(kR, kL));
}

double fringe_visibility(const JointState &state) {
    const Eigen::Matrix2cd rho = reduced_polarization(state, PolarizationBasis::kCircular);
    return 2.0 * std::abs(rho(kL, kR));
}

OamWindow window_for(int l, int support_min, int support_max, int guard) {
    const int reach = 2 * std::abs(l);
    return OamWindow(support_min - reach - guard, std::max(support_max, support_min + 1) + reach + guard, guard);
}

EquivalenceReport equivalence_check(int m, int l, double phi0, std::span<const double> thetas,
                                    std::span<const OamAmplitude> probe) {
    if (probe.empty()) {
        fail(ErrorKind::kEmptyDistribution, "equivalence probe has no OAM amplitudes");
    }
    int lo = probe.front().index;
    int hi = lo;
    for (const OamAmplitude &a : probe) {
        lo = std::min(lo, a.index);
        hi = std::max(hi, a.index);
    }
    const OamWindow w = window_for(l, lo, hi);
    // |+> = (|L> + |R>)/sqrt2 = |H>.
    const JointState input = make_state(PolarizationKet::H(), probe, w);
    EquivalenceReport r;
    for (double theta : thetas) {
        const SwitchParams p{m, l, theta, phi0};
        const double pw = control_probability(apply(build_W(p), input), phi0);
        const double pq = control_probability(apply(build_WQS(p), input), phi0);
        r.thetas.push_back(theta);
        r.p_w.push_back(pw);
        r.p_wqs.push_back(pq);
        r.max_deviation = std::max(r.max_deviation, std::abs(pw - pq));
    }
    return r;
}

EquivalenceReport equivalence_check(const SwitchParams &p) {
    const std::array<double, 1> thetas = {p.theta};
    const std::array<OamAmplitude, 1> probe = {OamAmplitude{0, 1.0}};
    return equivalence_check(p.m, p.l, p.phi0, thetas, probe);
}

}  // namespace qswitch
