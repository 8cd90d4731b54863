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

#include "qswitch/joint_state.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace qswitch {

namespace {

constexpr double kNormTolerance = 1e-10;

}  // namespace

JointState::JointState(OamWindow window, PolarizationBasis basis, std::vector<cplx> amps, bool normalized)
    : window_(window), basis_(basis), amps_(std::move(amps)), normalized_(normalized) {
    const std::size_t n = window_.size();
    if (amps_.size() != 2 * n) {
        fail(ErrorKind::kDimensionMismatch,
             "expected " + std::to_string(2 * n) + " amplitudes, got " + std::to_string(amps_.size()));
    }
    for (int pol = 0; pol < 2; ++pol) {
        for (int k = window_.l_min(); k <= window_.l_max(); ++k) {
            if (!window_.is_interior(k) && std::abs(amps_[pol * n + window_.offset(k)]) > kSupportEpsilon) {
                fail(ErrorKind::kSupportInGuardBand,
                     "amplitude at OAM " + std::to_string(k) + " lies in the guard band of " + window_.to_string());
            }
        }
    }
    if (normalized_ && std::abs(norm_squared() - 1.0) > kNormTolerance) {
        fail(ErrorKind::kUnnormalizedState, "state tagged normalized has norm^2 " + std::to_string(norm_squared()));
    }
}

cplx JointState::amp(int pol, int k) const {
    if (!window_.contains(k)) {
        return 0.0;
    }
    return amps_[pol * window_.size() + window_.offset(k)];
}

double JointState::norm_squared() const {
    double total = 0.0;
    for (const cplx &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

JointState JointState::in_basis(PolarizationBasis target) const {
    if (target == basis_) {
        return *this;
    }
    const Eigen::Matrix2cd c = basis_change(basis_, target);
    const std::size_t n = window_.size();
    std::vector<cplx> out(amps_.size());
    for (std::size_t j = 0; j < n; ++j) {
        const cplx a0 = amps_[j];
        const cplx a1 = amps_[n + j];
        out[j] = c(0, 0) * a0 + c(0, 1) * a1;
        out[n + j] = c(1, 0) * a0 + c(1, 1) * a1;
    }
    return JointState(window_, target, std::move(out), normalized_);
}

JointState JointState::renormalized() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        fail(ErrorKind::kNonNormalizable, "cannot renormalize the zero state");
    }
    const double inv = 1.0 / std::sqrt(n2);
    std::vector<cplx> out(amps_);
    for (cplx &a : out) {
        a *= inv;
    }
    return JointState(window_, basis_, std::move(out), true);
}

JointState JointState::embedded(const OamWindow &target) const {
    const std::size_t n = window_.size();
    const std::size_t tn = target.size();
    std::vector<cplx> out(2 * tn, 0.0);
    for (int pol = 0; pol < 2; ++pol) {
        for (int k = window_.l_min(); k <= window_.l_max(); ++k) {
            const cplx a = amps_[pol * n + window_.offset(k)];
            if (std::abs(a) <= kSupportEpsilon) {
                continue;
            }
            if (!target.is_interior(k)) {
                fail(ErrorKind::kSupportInGuardBand,
                     "OAM " + std::to_string(k) + " is not interior to " + target.to_string());
            }
            out[pol * tn + target.offset(k)] = a;
        }
    }
    return JointState(target, basis_, std::move(out), normalized_);
}

std::pair<int, int> JointState::support() const {
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    const std::size_t n = window_.size();
    for (int k = window_.l_min(); k <= window_.l_max(); ++k) {
        const std::size_t j = window_.offset(k);
        if (std::abs(amps_[j]) > kSupportEpsilon || std::abs(amps_[n + j]) > kSupportEpsilon) {
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
    }
    if (lo > hi) {
        fail(ErrorKind::kNonNormalizable, "zero state has no support");
    }
    return {lo, hi};
}

JointState make_state(const PolarizationKet &pol, std::span<const OamAmplitude> oam, const OamWindow &window) {
    if (oam.empty()) {
        fail(ErrorKind::kEmptyDistribution, "OAM distribution is empty");
    }
    // Repeated indices accumulate.
    std::map<int, cplx> dist;
    for (const OamAmplitude &e : oam) {
        if (!window.is_interior(e.index)) {
            fail(ErrorKind::kSupportInGuardBand,
                 "OAM " + std::to_string(e.index) + " is not interior to " + window.to_string());
        }
        dist[e.index] += e.amp;
    }
    double oam_norm = 0.0;
    for (const auto &[k, a] : dist) {
        oam_norm += std::norm(a);
    }
    const double pol_norm = pol.amp.squaredNorm();
    const double total = oam_norm * pol_norm;
    if (!(total > 0.0) || !std::isfinite(total)) {
        fail(ErrorKind::kNonNormalizable, "amplitudes are all zero or not finite");
    }
    const double scale = 1.0 / std::sqrt(total);
    const std::size_t n = window.size();
    std::vector<cplx> amps(2 * n, 0.0);
    for (const auto &[k, a] : dist) {
        amps[window.offset(k)] = pol.amp(0) * a * scale;
        amps[n + window.offset(k)] = pol.amp(1) * a * scale;
    }
    return JointState(window, pol.basis, std::move(amps), true);
}

cplx inner(const JointState &a, const JointState &b) {
    if (!(a.window() == b.window())) {
        fail(ErrorKind::kDimensionMismatch,
             "states live on different windows " + a.window().to_string() + " vs " + b.window().to_string());
    }
    const JointState bb = b.in_basis(a.basis());
    auto xa = a.amplitudes();
    auto xb = bb.amplitudes();
    cplx total = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) {
        total += std::conj(xa[i]) * xb[i];
    }
    return total;
}

double fidelity(const JointState &a, const JointState &b) {
    const double na = a.norm_squared();
    const double nb = b.norm_squared();
    if (!(na > 0.0) || !(nb > 0.0)) {
        fail(ErrorKind::kNonNormalizable, "fidelity with the zero state");
    }
    return std::abs(inner(a, b)) / std::sqrt(na * nb);
}

LzMoments lz_moments(const JointState &s) {
    if (!s.is_normalized() || std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
        fail(ErrorKind::kUnnormalizedState, "L_z moments need a normalized state");
    }
    const OamWindow &w = s.window();
    double m1 = 0.0;
    double m2 = 0.0;
    for (int k = w.l_min(); k <= w.l_max(); ++k) {
        const double p = std::norm(s.amp(0, k)) + std::norm(s.amp(1, k));
        m1 += k * p;
        m2 += static_cast<double>(k) * k * p;
    }
    return {m1, std::sqrt(std::max(0.0, m2 - m1 * m1))};
}

Eigen::Matrix2cd reduced_polarization(const JointState &s, PolarizationBasis basis) {
    const JointState t = s.in_basis(basis);
    const OamWindow &w = t.window();
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (int k = w.l_min(); k <= w.l_max(); ++k) {
        const cplx a0 = t.amp(0, k);
        const cplx a1 = t.amp(1, k);
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
        rho(1, 1) += a1 * std::conj(a1);
    }
    const double tr = std::real(rho.trace());
    if (!(tr > 0.0)) {
        fail(ErrorKind::kNonNormalizable, "reduced state of the zero state");
    }
    return rho / tr;
}

double purity(const Eigen::Matrix2cd &rho) {
    return std::real((rho * rho).trace());
}

}  // namespace qswitch
