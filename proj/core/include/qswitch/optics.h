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

#ifndef QSWITCH_OPTICS_H_
#define QSWITCH_OPTICS_H_

#include "qswitch/linear_op.h"
#include "qswitch/polarization.h"

namespace qswitch {

/// Polarization model of one Dove prism. Total internal reflection gives the
/// s and p components a relative retardance and an amplitude ratio.
struct DovePrismModel {
    double alpha = 0.0;            // axis angle against the polarization frame, rad
    double retardance = 0.2;       // s-p phase difference, rad
    double amplitude_ratio = 0.99; // |t_s / t_p|, in (0, 1]
    bool deflection = true;        // false: polarization passes untouched

    void validate() const;
};

struct QPlateModel {
    int order = 1;
};

/// Settings shared by every Dove prism pair of the rotation stage.
struct DoveTrainModel {
    double alpha0 = 0.0;
    double retardance = 0.2;
    double amplitude_ratio = 0.99;
    bool deflection = false;
    /// Polarization flip before the hollow roof prism, which makes the return
    /// pass undo the forward deflection.
    bool compensation = true;

    DovePrismModel stationary() const;
    DovePrismModel rotatable() const;
};

/// Q_l = D_l (x) |R><L| + D_l^dagger (x) |L><R|.
LinearOp qplate_op(const QPlateModel &q);

/// J(alpha) = R(-alpha) diag(1, rho e^{i delta}) R(alpha), linear basis.
JonesMatrix dove_jones(const DovePrismModel &d);

/// One stationary + one rotatable prism on the way out. Rotates the transverse
/// mode by 2*theta_rel; polarization sees J(alpha_r + theta_rel) J(alpha_s).
LinearOp dove_pair_op(double theta_rel, const DovePrismModel &stationary, const DovePrismModel &rotatable);

/// The same pair traversed on the way back, in reverse element order.
///
/// After the hollow-roof-prism composite the polarization frame is flipped, so
/// the prisms act as J(alpha + pi/2) in that frame; mapped back through the
/// flip this is the lab-frame operator. With `compensation` off the frame
/// advance is dropped and the forward deflection is not undone.
LinearOp dove_pair_return_op(double theta_rel, const DovePrismModel &stationary, const DovePrismModel &rotatable,
                             bool compensation);

enum class SuiteDirection {
    kForward,     // |R> -> |V>, |L> -> |H>
    kBackward,    // inverse of kForward
    kReturnPass,  // reverse traversal through the Faraday rotator: |H> -> |R>, |V> -> |L>
};

/// Quarter-wave plate + pi/4 Faraday rotator suite. OAM untouched.
LinearOp qwp_fr_suite_op(SuiteDirection direction);
JonesMatrix qwp_fr_suite_jones(SuiteDirection direction);

/// Net map of FR2-QWP2 -> hollow roof prism -> QWP2-FR2: |H> -> |V>, |V> -> -|H>.
LinearOp hrp_flip_op();
JonesMatrix hrp_flip_jones();

/// Control-qubit phase plate before the analyzer: |R> picks up exp(i (phi0 + pi)).
///
/// The round trip leaves a relative sign between the two orders (the flip maps
/// |V> to -|H>); the extra pi absorbs it so that the |V> projection follows
/// (1 - cos(4 m l theta + phi0)) / 2.
LinearOp phase_offset_op(double phi0);

}  // namespace qswitch

#endif  // QSWITCH_OPTICS_H_
