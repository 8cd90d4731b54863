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

#ifndef QSWITCH_LINEAR_OP_H_
#define QSWITCH_LINEAR_OP_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qswitch/joint_state.h"
#include "qswitch/polarization.h"

namespace qswitch {

/// One ladder monomial: |k> -> scale * exp(-i * rate * k) |k + shift>.
///
/// Rotations are monomials with shift 0, ladder shifts have rate 0, and the
/// set is closed under products, which keeps every composed element exact.
struct WeylTerm {
    cplx scale = 1.0;
    double rate = 0.0;
    int shift = 0;

    /// this * rhs (rhs acts first).
    WeylTerm after(const WeylTerm &rhs) const;
    WeylTerm adjoint() const;
};

enum class ActionKind {
    kIdentity,
    kOamPhase,
    kOamShift,
    kPolJones,
    kPolOamCoupled,
    kComposite,
};

std::string_view action_kind_name(ActionKind kind);

/// Operator on polarization (x) OAM, written as a 2x2 grid of monomial sums.
///
/// `basis` is the polarization basis the grid is expressed in; operators that
/// act as the same OAM map on both polarizations (rotations, shifts) have no
/// basis and apply to a state in whatever basis it is in.
class LinearOp {
   public:
    using Block = std::vector<WeylTerm>;

    LinearOp(std::string label, ActionKind kind, std::optional<PolarizationBasis> basis,
             std::array<Block, 4> blocks, bool unitary);

    static LinearOp identity();
    /// Same OAM map on both polarizations.
    static LinearOp oam_only(std::string label, ActionKind kind, Block terms);
    /// Jones block (x) identity on OAM. `unitary` defaults to a numeric check.
    static LinearOp jones(std::string label, const JonesMatrix &j, std::optional<bool> unitary = std::nullopt);
    /// Jones block (x) OAM map (a product element such as a Dove prism pair).
    static LinearOp jones_times(std::string label, const JonesMatrix &j, const WeylTerm &oam,
                                std::optional<bool> unitary = std::nullopt);
    /// |0><0| (x) block0 + |1><1| (x) block1 in the circular (control) basis.
    static LinearOp controlled(std::string label, Block block0, Block block1, bool unitary);

    const std::string &label() const {
        return label_;
    }
    ActionKind kind() const {
        return kind_;
    }
    std::optional<PolarizationBasis> basis() const {
        return basis_;
    }
    bool is_unitary() const {
        return unitary_;
    }
    const Block &block(int out, int in) const {
        return blocks_[2 * out + in];
    }
    /// Largest |shift| over all terms.
    int max_shift() const;

    LinearOp in_basis(PolarizationBasis target) const;
    LinearOp adjoint() const;
    LinearOp with_label(std::string label) const;

    /// this * rhs (rhs acts first).
    LinearOp operator*(const LinearOp &rhs) const;

   private:
    std::string label_;
    ActionKind kind_;
    std::optional<PolarizationBasis> basis_;
    std::array<Block, 4> blocks_;
    bool unitary_;
};

/// Applies op to s. Output is in op's basis (or s's, for basis-free ops).
/// Throws ShiftIntoGuardBand when support would land in, or start from, the
/// guard band. Non-unitary ops tag the result unnormalized.
JointState apply(const LinearOp &op, const JointState &s);

/// D_phi: multiplies the amplitude at OAM k by exp(-i k phi). D_{2m theta} is
/// rotation_op(2 m theta).
LinearOp rotation_op(double phi);

/// D_{delta hbar}: |k> -> |k + delta>.
LinearOp shift_op(int delta);

/// <psi2|psi1> with psi1 = shift(a) rot(phi) s and psi2 = rot(phi) shift(a) s.
/// Equals exp(i a phi) for every interior state.
cplx weyl_phase_check(int a, double phi, const JointState &s);

/// Dense matrix of op on the full window, in the given basis. Targets that
/// leave the window are dropped.
Eigen::MatrixXcd to_dense(const LinearOp &op, const OamWindow &window, PolarizationBasis basis);

/// max |U^dagger U - I| over basis states whose image stays interior.
double interior_unitarity_defect(const LinearOp &op, const OamWindow &window);

}  // namespace qswitch

#endif  // QSWITCH_LINEAR_OP_H_
