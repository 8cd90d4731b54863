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

#ifndef QSWITCH_JOINT_STATE_H_
#define QSWITCH_JOINT_STATE_H_

#include <span>
#include <utility>
#include <vector>

#include "qswitch/oam_window.h"
#include "qswitch/polarization.h"

namespace qswitch {

/// Amplitudes at or below this magnitude count as outside a state's support.
inline constexpr double kSupportEpsilon = 1e-14;

struct OamAmplitude {
    int index = 0;
    cplx amp = 1.0;
};

/// Pure polarization (x) OAM state on a truncated ladder.
///
/// Amplitudes are stored polarization-major in the tagged basis. Construction
/// rejects any support in the guard band. States produced by lossy elements
/// carry `is_normalized() == false`; everything else holds unit norm to 1e-10.
class JointState {
   public:
    JointState(OamWindow window, PolarizationBasis basis, std::vector<cplx> amps, bool normalized = true);

    const OamWindow &window() const {
        return window_;
    }
    PolarizationBasis basis() const {
        return basis_;
    }
    bool is_normalized() const {
        return normalized_;
    }
    std::span<const cplx> amplitudes() const {
        return amps_;
    }

    /// Amplitude of |pol>|k>; zero for k outside the window.
    cplx amp(int pol, int k) const;

    double norm_squared() const;

    JointState in_basis(PolarizationBasis target) const;
    JointState renormalized() const;

    /// Same state placed on another window (which must cover the support).
    JointState embedded(const OamWindow &target) const;

    /// Smallest and largest OAM index carrying amplitude. Fails on the zero state.
    std::pair<int, int> support() const;

   private:
    OamWindow window_;
    PolarizationBasis basis_;
    std::vector<cplx> amps_;
    bool normalized_;
};

/// pol (x) sum_k c_k |k>, normalized.
JointState make_state(const PolarizationKet &pol, std::span<const OamAmplitude> oam, const OamWindow &window);

/// <a|b>. Windows must match; b is converted into a's basis.
cplx inner(const JointState &a, const JointState &b);

/// |<a|b>| / (|a| |b|): global-phase-insensitive state comparison.
double fidelity(const JointState &a, const JointState &b);

struct LzMoments {
    double mean = 0.0;
    double sd = 0.0;
};

/// Mean and standard deviation of L_z. Requires a normalized state.
LzMoments lz_moments(const JointState &s);

/// Polarization density matrix with the OAM traced out, normalized to unit trace.
Eigen::Matrix2cd reduced_polarization(const JointState &s, PolarizationBasis basis);

double purity(const Eigen::Matrix2cd &rho);

}  // namespace qswitch

#endif  // QSWITCH_JOINT_STATE_H_
