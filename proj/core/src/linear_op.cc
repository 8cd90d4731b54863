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

#include "qswitch/linear_op.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace qswitch {

namespace {

constexpr double kTermEpsilon = 1e-15;

// Sums terms with identical (rate, shift) and drops terms that cancelled to
// round-off (basis changes there and back leave ~1e-17 residues that would
// otherwise register as spurious ladder shifts). First occurrence wins the slot.
LinearOp::Block merged(const LinearOp::Block &terms) {
    LinearOp::Block out;
    for (const WeylTerm &t : terms) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const WeylTerm &u) { return u.rate == t.rate && u.shift == t.shift; });
        if (it == out.end()) {
            out.push_back(t);
        } else {
            it->scale += t.scale;
        }
    }
    std::erase_if(out, [](const WeylTerm &t) { return std::abs(t.scale) <= kTermEpsilon; });
    return out;
}

LinearOp::Block scaled(const LinearOp::Block &terms, cplx c) {
    LinearOp::Block out;
    if (c == cplx(0.0, 0.0)) {
        return out;
    }
    out.reserve(terms.size());
    for (WeylTerm t : terms) {
        t.scale *= c;
        out.push_back(t);
    }
    return out;
}

void append(LinearOp::Block &dst, const LinearOp::Block &src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

cplx phase_of(const WeylTerm &t, int k) {
    return t.rate == 0.0 ? t.scale : t.scale * std::polar(1.0, -t.rate * static_cast<double>(k));
}

}  // namespace

WeylTerm WeylTerm::after(const WeylTerm &rhs) const {
    WeylTerm out;
    out.scale = scale * rhs.scale;
    if (rate != 0.0 && rhs.shift != 0) {
        out.scale *= std::polar(1.0, -rate * static_cast<double>(rhs.shift));
    }
    out.rate = rate + rhs.rate;
    out.shift = shift + rhs.shift;
    return out;
}

WeylTerm WeylTerm::adjoint() const {
    WeylTerm out;
    out.scale = std::conj(scale);
    if (rate != 0.0 && shift != 0) {
        out.scale *= std::polar(1.0, -rate * static_cast<double>(shift));
    }
    out.rate = -rate;
    out.shift = -shift;
    return out;
}

std::string_view action_kind_name(ActionKind kind) {
    switch (kind) {
        case ActionKind::kIdentity:
            return "identity";
        case ActionKind::kOamPhase:
            return "oam-phase";
        case ActionKind::kOamShift:
            return "oam-shift";
        case ActionKind::kPolJones:
            return "pol-jones";
        case ActionKind::kPolOamCoupled:
            return "pol-oam-coupled";
        case ActionKind::kComposite:
            return "composite";
    }
    return "unknown";
}

LinearOp::LinearOp(std::string label, ActionKind kind, std::optional<PolarizationBasis> basis,
                   std::array<Block, 4> blocks, bool unitary)
    : label_(std::move(label)), kind_(kind), basis_(basis), unitary_(unitary) {
    for (std::size_t i = 0; i < 4; ++i) {
        blocks_[i] = merged(blocks[i]);
    }
}

LinearOp LinearOp::identity() {
    return oam_only("identity", ActionKind::kIdentity, {WeylTerm{}});
}

LinearOp LinearOp::oam_only(std::string label, ActionKind kind, Block terms) {
    return LinearOp(std::move(label), kind, std::nullopt, {terms, {}, {}, terms}, true);
}

LinearOp LinearOp::jones(std::string label, const JonesMatrix &j, std::optional<bool> unitary) {
    return jones_times(std::move(label), j, WeylTerm{}, unitary);
}

LinearOp LinearOp::jones_times(std::string label, const JonesMatrix &j, const WeylTerm &oam,
                               std::optional<bool> unitary) {
    std::array<Block, 4> blocks;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            blocks[2 * r + c] = scaled({oam}, j.m(r, c));
        }
    }
    const bool is_unitary = unitary.value_or(j.is_unitary(1e-12));
    return LinearOp(std::move(label), ActionKind::kPolJones, j.basis, std::move(blocks), is_unitary);
}

LinearOp LinearOp::controlled(std::string label, Block block0, Block block1, bool unitary) {
    return LinearOp(std::move(label), ActionKind::kPolOamCoupled, PolarizationBasis::kCircular,
                    {std::move(block0), {}, {}, std::move(block1)}, unitary);
}

int LinearOp::max_shift() const {
    int m = 0;
    for (const Block &b : blocks_) {
        for (const WeylTerm &t : b) {
            m = std::max(m, std::abs(t.shift));
        }
    }
    return m;
}

LinearOp LinearOp::in_basis(PolarizationBasis target) const {
    if (!basis_.has_value()) {
        // Polarization-diagonal and basis independent; only the tag changes.
        return LinearOp(label_, kind_, target, blocks_, unitary_);
    }
    if (*basis_ == target) {
        return *this;
    }
    const Eigen::Matrix2cd c = basis_change(*basis_, target);
    std::array<Block, 4> out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Block acc;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    append(acc, scaled(block(a, b), c(i, a) * std::conj(c(j, b))));
                }
            }
            out[2 * i + j] = std::move(acc);
        }
    }
    return LinearOp(label_, kind_, target, std::move(out), unitary_);
}

LinearOp LinearOp::adjoint() const {
    std::array<Block, 4> out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Block b;
            for (const WeylTerm &t : block(j, i)) {
                b.push_back(t.adjoint());
            }
            out[2 * i + j] = std::move(b);
        }
    }
    return LinearOp(label_ + "^dagger", kind_, basis_, std::move(out), unitary_);
}

LinearOp LinearOp::with_label(std::string label) const {
    LinearOp out = *this;
    out.label_ = std::move(label);
    return out;
}

LinearOp LinearOp::operator*(const LinearOp &rhs) const {
    std::optional<PolarizationBasis> basis = basis_.has_value() ? basis_ : rhs.basis_;
    const LinearOp lhs_b = basis.has_value() ? in_basis(*basis) : *this;
    const LinearOp rhs_b = basis.has_value() ? rhs.in_basis(*basis) : rhs;
    std::array<Block, 4> out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Block acc;
            for (int k = 0; k < 2; ++k) {
                for (const WeylTerm &a : lhs_b.block(i, k)) {
                    for (const WeylTerm &b : rhs_b.block(k, j)) {
                        acc.push_back(a.after(b));
                    }
                }
            }
            out[2 * i + j] = std::move(acc);
        }
    }
    ActionKind kind = ActionKind::kComposite;
    if (kind_ == ActionKind::kIdentity) {
        kind = rhs.kind_;
    } else if (rhs.kind_ == ActionKind::kIdentity) {
        kind = kind_;
    }
    return LinearOp(label_ + " * " + rhs.label_, kind, basis, std::move(out), unitary_ && rhs.unitary_);
}

JointState apply(const LinearOp &op, const JointState &s) {
    const JointState in = op.basis().has_value() ? s.in_basis(*op.basis()) : s;
    const OamWindow &w = in.window();
    const std::size_t n = w.size();
    std::vector<cplx> out(2 * n, 0.0);
    for (int j = 0; j < 2; ++j) {
        for (int k = w.l_min(); k <= w.l_max(); ++k) {
            const cplx a = in.amp(j, k);
            if (std::abs(a) <= kSupportEpsilon) {
                continue;
            }
            if (!w.is_interior(k)) {
                fail(ErrorKind::kShiftIntoGuardBand,
                     op.label() + ": support at OAM " + std::to_string(k) + " starts in the guard band");
            }
            for (int i = 0; i < 2; ++i) {
                for (const WeylTerm &t : op.block(i, j)) {
                    const int target = k + t.shift;
                    if (!w.is_interior(target)) {
                        fail(ErrorKind::kShiftIntoGuardBand, op.label() + ": OAM " + std::to_string(k) + " -> " +
                                                                 std::to_string(target) + " leaves the interior of " +
                                                                 w.to_string());
                    }
                    out[i * n + w.offset(target)] += a * phase_of(t, k);
                }
            }
        }
    }
    return JointState(w, in.basis(), std::move(out), op.is_unitary() && in.is_normalized());
}

LinearOp rotation_op(double phi) {
    return LinearOp::oam_only("rot(" + std::to_string(phi) + ")", ActionKind::kOamPhase,
                              {WeylTerm{1.0, phi, 0}});
}

LinearOp shift_op(int delta) {
    return LinearOp::oam_only("shift(" + std::to_string(delta) + ")", ActionKind::kOamShift,
                              {WeylTerm{1.0, 0.0, delta}});
}

cplx weyl_phase_check(int a, double phi, const JointState &s) {
    const LinearOp rot = rotation_op(phi);
    const LinearOp sh = shift_op(a);
    const JointState psi1 = apply(sh, apply(rot, s));
    const JointState psi2 = apply(rot, apply(sh, s));
    return inner(psi2, psi1) / s.norm_squared();
}

Eigen::MatrixXcd to_dense(const LinearOp &op, const OamWindow &window, PolarizationBasis basis) {
    const LinearOp b = op.in_basis(basis);
    const std::size_t n = window.size();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int j = 0; j < 2; ++j) {
        for (int k = window.l_min(); k <= window.l_max(); ++k) {
            for (int i = 0; i < 2; ++i) {
                for (const WeylTerm &t : b.block(i, j)) {
                    const int target = k + t.shift;
                    if (window.contains(target)) {
                        u(i * n + window.offset(target), j * n + window.offset(k)) += phase_of(t, k);
                    }
                }
            }
        }
    }
    return u;
}

double interior_unitarity_defect(const LinearOp &op, const OamWindow &window) {
    const int margin = op.max_shift();
    const int lo = window.interior_min() + margin;
    const int hi = window.interior_max() - margin;
    if (lo > hi) {
        fail(ErrorKind::kShiftIntoGuardBand, "window " + window.to_string() + " has no room for shifts of " +
                                                 std::to_string(margin));
    }
    const PolarizationBasis basis = op.basis().value_or(PolarizationBasis::kLinear);
    const Eigen::MatrixXcd u = to_dense(op, window, basis);
    const std::size_t n = window.size();
    std::vector<Eigen::Index> cols;
    for (int j = 0; j < 2; ++j) {
        for (int k = lo; k <= hi; ++k) {
            cols.push_back(static_cast<Eigen::Index>(j * n + window.offset(k)));
        }
    }
    Eigen::MatrixXcd sub(u.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        sub.col(static_cast<Eigen::Index>(c)) = u.col(cols[c]);
    }
    const Eigen::MatrixXcd gram = sub.adjoint() * sub;
    return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace qswitch
