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

#include "qswitch/error.h"
#include "qswitch/metrology.h"
#include "qswitch/montecarlo.h"

namespace qswitch {
namespace {

constexpr double kPi = std::numbers::pi;

struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

Moments draw_moments(double p, std::int64_t nu, int draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double k = static_cast<double>(sample_counts(p, nu, rng));
        s += k;
        s2 += k * k;
    }
    const double mean = s / draws;
    return {mean, (s2 - draws * mean * mean) / (draws - 1)};
}

TEST(Sampling, ExactBinomialMoments) {
    const double p = 0.3;
    const std::int64_t nu = 1000;
    const int draws = 20000;
    const Moments mo = draw_moments(p, nu, draws, 1);
    const double var = nu * p * (1 - p);
    EXPECT_NEAR(mo.mean, nu * p, 5.0 * std::sqrt(var / draws));
    // SD of the sample variance is about var * sqrt(2 / draws).
    EXPECT_NEAR(mo.var / var, 1.0, 5.0 * std::sqrt(2.0 / draws));
}

TEST(Sampling, NormalApproximationMoments) {
    const double p = 0.5;
    const std::int64_t nu = 70000000;
    ASSERT_GT(nu * p * (1 - p), kNormalApproxThreshold);
    const int draws = 20000;
    const Moments mo = draw_moments(p, nu, draws, 2);
    const double var = nu * p * (1 - p);
    EXPECT_NEAR(mo.mean, nu * p, 5.0 * std::sqrt(var / draws));
    EXPECT_NEAR(mo.var / var, 1.0, 5.0 * std::sqrt(2.0 / draws));
}

TEST(Sampling, EdgesAndErrors) {
    std::mt19937_64 rng(3);
    EXPECT_EQ(sample_counts(0.0, 100, rng), 0);
    EXPECT_EQ(sample_counts(1.0, 100, rng), 100);
    EXPECT_THROW(sample_counts(0.5, 0, rng), Error);
    EXPECT_THROW(sample_counts(1.5, 10, rng), Error);
    for (int i = 0; i < 100; ++i) {
        const auto k = sample_counts(1e-9, 1000000000000LL, rng);
        EXPECT_GE(k, 0);
    }
}

TEST(Rng, DependsOnlyOnSeedAndIndex) {
    auto a = trial_rng(2026, 5);
    auto b = trial_rng(2026, 5);
    auto c = trial_rng(2026, 6);
    auto d = trial_rng(2027, 5);
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
    EXPECT_NE(va, d());
    // High bits of the index and seed take part too.
    EXPECT_NE(trial_rng(1, 1ULL << 40)(), trial_rng(1, 0)());
    EXPECT_NE(trial_rng(1ULL << 40, 0)(), trial_rng(0, 0)());
}

TEST(NoisyProbability, IdealAndDressed) {
    const NoiseModel ideal;
    const double theta = 0.01;
    EXPECT_NEAR(noisy_probability(theta, 2, 1, 0.3, ideal, {}), 0.5 * (1 - std::cos(8 * theta + 0.3)), 1e-15);
    NoiseModel n{0.9, 0.0, 0.0, 0.8};
    const TrialDraws d{1e-3, 0.05};
    const double p = 0.5 * (1 - 0.9 * std::cos(8 * (theta + 1e-3) + 0.3 + 0.05));
    EXPECT_NEAR(noisy_probability(theta, 2, 1, 0.3, n, d), 0.8 * p / (0.8 * p + 1 - p), 1e-15);
}

TEST(NoiseModelTest, Validation) {
    EXPECT_NO_THROW(NoiseModel{}.validate());
    EXPECT_TRUE(NoiseModel{}.is_ideal());
    EXPECT_THROW((NoiseModel{0.0, 0, 0, 1}.validate()), Error);
    EXPECT_THROW((NoiseModel{1, -1e-3, 0, 1}.validate()), Error);
    EXPECT_THROW((NoiseModel{1, 0, 0, 1.1}.validate()), Error);
}

TEST(Branch, HalfPeriodIndex) {
    EXPECT_EQ(branch_for(2, 1, 0.0, -kPi / 2), -1);
    EXPECT_EQ(branch_for(2, 1, 0.0, kPi / 2), 0);
    EXPECT_EQ(branch_for(2, 1, 0.0, 3 * kPi / 2), 1);
    try {
        branch_for(2, 1, 0.0, kPi);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kDegeneratePoint);
    }
}

TEST(Inversion, ExactOnEveryBranch) {
    // Forward law then inverse must return theta; oracle is the law itself.
    for (int m : {2, 8}) {
        for (int l : {1, 128}) {
            for (double phi0 : {-kPi / 2, 0.4, 2.9, -2.2}) {
                for (double v : {1.0, 0.85}) {
                    for (double eta : {1.0, 0.7}) {
                        const NoiseModel noise{v, 0, 0, eta};
                        const double theta = 3e-5;
                        const double f = 4.0 * m * l;
                        const double psi = f * theta + phi0;
                        if (std::abs(std::remainder(psi, kPi)) < 0.05) {
                            continue;
                        }
                        const Calibration cal = make_calibration(m, l, theta, phi0, noise);
                        const double p = noisy_probability(theta, m, l, phi0, noise, {});
                        const double got = estimate_theta_from_probability(p, 1e8, cal);
                        EXPECT_NEAR(got * f, theta * f, 1e-10) << m << " " << l << " " << phi0;
                    }
                }
            }
        }
    }
}

TEST(Inversion, OutOfBranchAndClamp) {
    const NoiseModel noise{0.5, 0, 0, 1};
    const Calibration cal = make_calibration(2, 1, 0.0, -kPi / 2, noise);
    try {
        estimate_theta_from_probability(0.95, 1e6, cal);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kOutOfBranch);
    }
    // Just past the contrast but within noise: clamped to the branch end.
    const Calibration full = make_calibration(2, 1, 0.0, -kPi / 2, NoiseModel{});
    const double edge = estimate_theta_point(100, 100, full);
    EXPECT_TRUE(std::isfinite(edge));
    const double psi = edge * 8.0 - kPi / 2;
    EXPECT_GE(psi, -kPi - 1e-12);
    EXPECT_LE(psi, 1e-12);
    EXPECT_THROW(estimate_theta_point(101, 100, full), Error);
}

TEST(Trial, IdealTrialLandsWithinFewCrb) {
    const double theta = 0.025 * kPi / 180.0;
    const double phi0 = quadrature_phi0(2, 1, theta);
    const TrialSpec spec{2, 1, theta, phi0, 70000000, NoiseModel{}, 2026};
    const Calibration cal = make_calibration(2, 1, theta, phi0, spec.noise);
    const double c = crb(2, 1, 7e7);
    for (std::uint64_t i = 0; i < 50; ++i) {
        const TrialResult r = run_trial(spec, cal, i);
        EXPECT_EQ(r.index, i);
        EXPECT_EQ(r.nu, 70000000);
        EXPECT_LT(std::abs(r.theta_hat - theta), 6.0 * c);
    }
}

TEST(Trial, DrawOrderJitterThenPhase) {
    const TrialSpec spec{2, 1, 0.01, 0.2, 1000, NoiseModel{1.0, 1e-3, 2e-2, 1.0}, 99};
    const TrialResult r = simulate_count(spec, 7);
    auto rng = trial_rng(99, 7);
    std::normal_distribution<double> n(0.0, 1.0);
    const double zj = n(rng);
    std::normal_distribution<double> n2(0.0, 1.0);
    const double zp = n2(rng);
    EXPECT_DOUBLE_EQ(r.jitter, 1e-3 * zj);
    EXPECT_DOUBLE_EQ(r.phase, 2e-2 * zp);
}

}  // namespace
}  // namespace qswitch
