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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qswitch/optics.h"
#include "test_util.h"

namespace qswitch {
namespace {

constexpr double kPi = std::numbers::pi;

// R(-a) diag(1, rho e^{i delta}) R(a), written out entry by entry.
Eigen::Matrix2cd jones_oracle(double a, double delta, double rho) {
    const double c = std::cos(a);
    const double s = std::sin(a);
    const cplx g = std::polar(rho, delta);
    Eigen::Matrix2cd m;
    m << c * c + g * s * s, c * s - g * c * s, c * s - g * c * s, s * s + g * c * c;
    return m;
}

Eigen::Vector2cd linear(const PolarizationKet &k) {
    return k.in_basis(PolarizationBasis::kLinear).amp;
}

TEST(DovePrism, JonesMatchesClosedForm) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 50; ++i) {
        const DovePrismModel d{u(rng), 0.3 * u(rng), 0.5 + 0.5 * std::abs(u(rng)) / kPi, true};
        const JonesMatrix j = dove_jones(d);
        EXPECT_LT((j.m - jones_oracle(d.alpha, d.retardance, d.amplitude_ratio)).norm(), 1e-14);
    }
}

TEST(DovePrism, QuarterTurnPairIsScalar) {
    // J(a) J(a + pi/2) = rho e^{i delta} I.
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = 2.0 * kPi * u(rng);
        const double delta = kPi * u(rng);
        const double rho = 0.05 + 0.95 * u(rng);
        const JonesMatrix p = dove_jones({a, delta, rho, true}) * dove_jones({a + kPi / 2.0, delta, rho, true});
        const Eigen::Matrix2cd expect = std::polar(rho, delta) * Eigen::Matrix2cd::Identity();
        EXPECT_LT((p.m - expect).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(DovePrism, DeflectionOffIsIdentity) {
    const JonesMatrix j = dove_jones({0.3, 0.5, 0.9, false});
    EXPECT_EQ(j.m, Eigen::Matrix2cd::Identity());
}

TEST(DovePrism, RejectsBadRatio) {
    EXPECT_THROW(dove_jones({0.0, 0.2, 0.0, true}), Error);
    EXPECT_THROW(dove_jones({0.0, 0.2, 1.5, true}), Error);
}

TEST(Suite, ForwardMapsCircularToLinear) {
    const Eigen::Matrix2cd f = qwp_fr_suite_jones(SuiteDirection::kForward).in_basis(PolarizationBasis::kLinear).m;
    EXPECT_LT((f * linear(PolarizationKet::R()) - linear(PolarizationKet::V())).norm(), 1e-15);
    EXPECT_LT((f * linear(PolarizationKet::L()) - linear(PolarizationKet::H())).norm(), 1e-15);
}

TEST(Suite, BackwardInvertsForward) {
    const JonesMatrix f = qwp_fr_suite_jones(SuiteDirection::kForward);
    const JonesMatrix b = qwp_fr_suite_jones(SuiteDirection::kBackward);
    EXPECT_LT(((b * f).m - Eigen::Matrix2cd::Identity()).norm(), 1e-15);
}

TEST(Suite, ReturnPassMapsLinearToCircular) {
    const Eigen::Matrix2cd r = qwp_fr_suite_jones(SuiteDirection::kReturnPass).in_basis(PolarizationBasis::kLinear).m;
    EXPECT_LT((r * linear(PolarizationKet::H()) - linear(PolarizationKet::R())).norm(), 1e-15);
    EXPECT_LT((r * linear(PolarizationKet::V()) - linear(PolarizationKet::L())).norm(), 1e-15);
    EXPECT_TRUE(qwp_fr_suite_jones(SuiteDirection::kReturnPass).is_unitary());
}

TEST(Suite, HrpFlip) {
    const Eigen::Matrix2cd f = hrp_flip_jones().in_basis(PolarizationBasis::kLinear).m;
    EXPECT_LT((f * linear(PolarizationKet::H()) - linear(PolarizationKet::V())).norm(), 1e-15);
    EXPECT_LT((f * linear(PolarizationKet::V()) + linear(PolarizationKet::H())).norm(), 1e-15);
}

TEST(QPlate, ShiftsOamByCircularComponent) {
    const OamWindow w(-20, 20, 4);
    const std::vector<OamAmplitude> oam = {{2, 1.0}};
    const LinearOp q = qplate_op({3});
    const JointState l = apply(q, make_state(PolarizationKet::L(), oam, w)).in_basis(PolarizationBasis::kCircular);
    const JointState r = apply(q, make_state(PolarizationKet::R(), oam, w)).in_basis(PolarizationBasis::kCircular);
    // |L, k> -> |R, k + l>, |R, k> -> |L, k - l>.
    EXPECT_NEAR(std::norm(l.amp(1, 5)), 1.0, 1e-15);
    EXPECT_NEAR(std::norm(r.amp(0, -1)), 1.0, 1e-15);
    // Applying the plate twice returns to the input.
    const JointState h = make_state(PolarizationKet::H(), oam, w);
    EXPECT_NEAR(std::abs(inner(h, apply(q, apply(q, h))) - 1.0), 0.0, 1e-14);
}

TEST(DovePair, RotatesTransverseModeByTwiceTheAngle) {
    const OamWindow w(-10, 10, 2);
    const std::vector<OamAmplitude> oam = {{3, 1.0}};
    const JointState s = make_state(PolarizationKet::H(), oam, w);
    const DovePrismModel ideal{0.0, 0.2, 0.99, false};
    const double theta = 0.21;
    const JointState out = apply(dove_pair_op(theta, ideal, ideal), s);
    EXPECT_NEAR(std::abs(inner(s, out) - std::polar(1.0, -2.0 * theta * 3)), 0.0, 1e-14);
}

TEST(DovePair, CompensatedRoundTripIsScalarOnPolarization) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const LinearOp flip = hrp_flip_op();
    for (int i = 0; i < 50; ++i) {
        const DovePrismModel d{kPi * u(rng), kPi * u(rng), 0.5 + 0.5 * u(rng), true};
        const double theta = 0.3 * (u(rng) - 0.5);
        const LinearOp fwd = dove_pair_op(theta, d, d);
        const LinearOp ret = dove_pair_return_op(theta, d, d, true);
        // ret * flip * fwd must be flip up to a scalar.
        const LinearOp net = flip.adjoint() * ret * flip * fwd;
        const OamWindow w(-6, 6, 2);
        const Eigen::MatrixXcd dense = to_dense(net, w, PolarizationBasis::kLinear);
        const auto n = static_cast<Eigen::Index>(w.size());
        const Eigen::Index j = static_cast<Eigen::Index>(w.offset(0));
        const cplx c = dense(j, j);
        EXPECT_NEAR(std::abs(dense(n + j, n + j) - c), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(dense(n + j, j)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(dense(j, n + j)), 0.0, 1e-12);
    }
}

TEST(PhaseOffset, AddsPhiPlusPiOnR) {
    const Eigen::MatrixXcd m = to_dense(phase_offset_op(0.4), OamWindow(-2, 2, 0), PolarizationBasis::kCircular);
    EXPECT_NEAR(std::abs(m(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m(7, 7) - std::polar(1.0, 0.4 + kPi)), 0.0, 1e-15);
}

}  // namespace
}  // namespace qswitch
