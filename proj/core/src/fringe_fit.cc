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

#include "qswitch/fringe_fit.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "qswitch/error.h"

namespace qswitch {

namespace {

constexpr double kGradientStop = 1e-12;
constexpr double kStepStop = 1e-14;
constexpr double kLambdaCeiling = 1e16;
constexpr std::size_t kMinPoints = 8;

enum Param { kFreq = 0, kPhase = 1, kVis = 2, kOffset = 3 };

struct Problem {
    std::vector<double> t;
    std::vector<double> p;
    std::vector<double> w;
};

double model(const Eigen::Vector4d &q, double t) {
    return 0.5 * (q[kOffset] - q[kVis] * std::cos(q[kFreq] * t + q[kPhase]));
}

double chi2(const Problem &pr, const Eigen::Vector4d &q) {
    double s = 0.0;
    for (std::size_t i = 0; i < pr.t.size(); ++i) {
        const double r = pr.p[i] - model(q, pr.t[i]);
        s += pr.w[i] * r * r;
    }
    return s;
}

}  // namespace

SweepPoint sweep_point_from_counts(double theta, std::int64_t k, std::int64_t nu) {
    if (nu < 1 || k < 0 || k > nu) {
        fail(ErrorKind::kInvalidArgument, "sweep counts must satisfy 0 <= k <= nu with nu >= 1");
    }
    return {theta, static_cast<double>(k) / static_cast<double>(nu), static_cast<double>(nu)};
}

FitReport fit_fringe(std::span<const SweepPoint> sweep, int m, int l, const FitFreeParams &free) {
    if (m < 1 || l < 1) {
        fail(ErrorKind::kInvalidArgument, "fringe fit needs m, l >= 1");
    }
    const double f0 = 4.0 * m * l;
    const double period = 2.0 * std::numbers::pi / f0;
    const std::size_t n = sweep.size();
    if (n < kMinPoints) {
        fail(ErrorKind::kInsufficientSpan, "fringe fit needs at least 8 sweep points, got " + std::to_string(n));
    }
    const auto [lo_it, hi_it] =
        std::minmax_element(sweep.begin(), sweep.end(), [](const SweepPoint &a, const SweepPoint &b) {
            return a.theta < b.theta;
        });
    const double span = hi_it->theta - lo_it->theta;
    const double nd = static_cast<double>(n);
    if (span * nd / (nd - 1.0) < period * (1.0 - 1e-9)) {
        fail(ErrorKind::kInsufficientSpan, "sweep spans " + std::to_string(span) + " rad, less than one fringe period " +
                                               std::to_string(period) + " rad");
    }
    const double center = 0.5 * (hi_it->theta + lo_it->theta);

    Problem pr;
    double mean = 0.0;
    double pmin = 1.0;
    double pmax = 0.0;
    for (const SweepPoint &s : sweep) {
        if (!(s.nu >= 1.0) || !(s.p_hat >= 0.0 && s.p_hat <= 1.0)) {
            fail(ErrorKind::kInvalidArgument, "sweep point needs nu >= 1 and p_hat in [0, 1]");
        }
        const double pt = (s.nu * s.p_hat + 0.5) / (s.nu + 1.0);
        pr.t.push_back(s.theta - center);
        pr.p.push_back(s.p_hat);
        pr.w.push_back(s.nu / (pt * (1.0 - pt)));
        mean += s.p_hat;
        pmin = std::min(pmin, s.p_hat);
        pmax = std::max(pmax, s.p_hat);
    }
    mean /= nd;

    std::complex<double> dft = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dft += (pr.p[i] - mean) * std::polar(1.0, -f0 * pr.t[i]);
    }
    Eigen::Vector4d q;
    q[kFreq] = f0;
    q[kPhase] = std::arg(-dft);
    q[kVis] = free.visibility ? std::max(pmax - pmin, 1e-3) : 1.0;
    q[kOffset] = free.offset ? pmax + pmin : 1.0;

    std::vector<int> idx;
    if (free.frequency) idx.push_back(kFreq);
    if (free.phi0) idx.push_back(kPhase);
    if (free.visibility) idx.push_back(kVis);
    if (free.offset) idx.push_back(kOffset);
    const auto np = static_cast<Eigen::Index>(idx.size());

    double cost = chi2(pr, q);
    double lambda = 1e-3;
    int it = 0;
    bool converged = np == 0;
    while (!converged && it < kFitMaxIterations) {
        ++it;
        Eigen::MatrixXd jtj = Eigen::MatrixXd::Zero(np, np);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(np);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = q[kFreq] * pr.t[i] + q[kPhase];
            const double su = std::sin(u);
            const double cu = std::cos(u);
            Eigen::Vector4d d;
            d[kFreq] = 0.5 * q[kVis] * su * pr.t[i];
            d[kPhase] = 0.5 * q[kVis] * su;
            d[kVis] = -0.5 * cu;
            d[kOffset] = 0.5;
            Eigen::VectorXd row(np);
            for (Eigen::Index a = 0; a < np; ++a) {
                row[a] = d[idx[a]];
            }
            const double r = pr.p[i] - model(q, pr.t[i]);
            jtj.noalias() += pr.w[i] * row * row.transpose();
            g.noalias() += pr.w[i] * r * row;
        }
        if (g.lpNorm<Eigen::Infinity>() < kGradientStop) {
            converged = true;
            break;
        }
        bool stepped = false;
        while (lambda < kLambdaCeiling) {
            Eigen::MatrixXd a = jtj;
            a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
            const Eigen::VectorXd delta = a.ldlt().solve(g);
            Eigen::Vector4d trial = q;
            for (Eigen::Index k = 0; k < np; ++k) {
                trial[idx[k]] += delta[k];
            }
            const double c = chi2(pr, trial);
            if (std::isfinite(c) && c <= cost) {
                double rel = 0.0;
                for (Eigen::Index k = 0; k < np; ++k) {
                    rel = std::max(rel, std::abs(delta[k]) / (std::abs(q[idx[k]]) + 1e-300));
                }
                q = trial;
                const bool stalled = c == cost;
                cost = c;
                lambda = std::max(lambda / 10.0, 1e-12);
                stepped = true;
                if (rel < kStepStop || stalled) {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) {
            // No descent direction left at working precision.
            converged = true;
        }
    }
    if (!converged) {
        fail(ErrorKind::kNonConvergence, "fringe fit did not converge in 200 iterations");
    }
    FitReport r;
    r.frequency = q[kFreq];
    r.phi0 = std::remainder(q[kPhase] - q[kFreq] * center, 2.0 * std::numbers::pi);
    r.visibility = q[kVis];
    r.offset = q[kOffset];
    if (r.visibility < 0.0) {
        r.visibility = -r.visibility;
        r.phi0 = std::remainder(r.phi0 + std::numbers::pi, 2.0 * std::numbers::pi);
    }
    r.chi2 = cost;
    r.iterations = it;
    r.points = n;
    return r;
}

}  // namespace qswitch
