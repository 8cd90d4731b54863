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

#include "qswitch/metrology.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qswitch/switch.h"

namespace qswitch {

namespace {

constexpr double kRichardsonTrigger = 1e-9;
constexpr double kBalanceTolerance = 1e-9;
constexpr double kDegenerateGuard = 1e-6;

void check_step(double step) {
    if (!(step >= kMinGeneratorStep)) {
        fail(ErrorKind::kStepTooSmall, "finite-difference step " + std::to_string(step) +
                                           " is below 1e-7; the difference would be dominated by round-off");
    }
    if (step > kMaxGeneratorStep) {
        fail(ErrorKind::kInvalidArgument, "finite-difference step must not exceed 1e-3");
    }
}

JointState apply_guarded(const LinearOp &op, const JointState &s) {
    try {
        return apply(op, s);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::kShiftIntoGuardBand) {
            fail(ErrorKind::kGuardBandViolation, e.what());
        }
        throw;
    }
}

Eigen::VectorXcd as_vector(const JointState &s, PolarizationBasis basis) {
    const JointState b = s.in_basis(basis);
    const auto a = b.amplitudes();
    return Eigen::Map<const Eigen::VectorXcd>(a.data(), static_cast<Eigen::Index>(a.size()));
}

// (U(theta + s) - U(theta - s)) chi / (2 s).
Eigen::VectorXcd central(const OperatorFamily &u, double theta, double s, const JointState &chi,
                         PolarizationBasis basis) {
    const Eigen::VectorXcd plus = as_vector(apply_guarded(u(theta + s), chi), basis);
    const Eigen::VectorXcd minus = as_vector(apply_guarded(u(theta - s), chi), basis);
    return (plus - minus) / (2.0 * s);
}

std::string describe_probe(const JointState &probe) {
    const LzMoments mom = lz_moments(probe);
    const auto [lo, hi] = probe.support();
    std::ostringstream os;
    os.precision(17);
    os << "balanced control (x) OAM on [" << lo << ", " << hi << "], <Lz> = " << mom.mean << ", dLz = " << mom.sd;
    return os.str();
}

double relative_deviation(double numeric, double analytic) {
    if (analytic == 0.0) {
        return std::abs(numeric);
    }
    return std::abs(numeric - analytic) / std::abs(analytic);
}

}  // namespace

JointState apply_generator(const OperatorFamily &u, double theta, double step, const JointState &psi) {
    check_step(step);
    const LinearOp u0 = u(theta);
    const PolarizationBasis basis = u0.basis().value_or(psi.basis());
    const JointState chi = apply_guarded(u0.adjoint(), psi);
    const Eigen::VectorXcd d1 = central(u, theta, step, chi, basis);
    const Eigen::VectorXcd d2 = central(u, theta, step / 2.0, chi, basis);
    const double scale = std::max(1.0, d2.norm());
    const Eigen::VectorXcd d = (d1 - d2).norm() > kRichardsonTrigger * scale ? Eigen::VectorXcd((4.0 * d2 - d1) / 3.0)
                                                                              : d1;
    const Eigen::VectorXcd h = cplx(0.0, 1.0) * d;
    return JointState(psi.window(), basis, std::vector<cplx>(h.data(), h.data() + h.size()), false);
}

Eigen::MatrixXcd generator_numeric(const OperatorFamily &u, double theta, double step, const OamWindow &window) {
    check_step(step);
    const LinearOp u0 = u(theta);
    const int margin = u0.max_shift();
    const int lo = window.interior_min() + margin;
    const int hi = window.interior_max() - margin;
    if (lo > hi) {
        fail(ErrorKind::kGuardBandViolation,
             "window " + window.to_string() + " leaves no interior states for shifts of " + std::to_string(margin));
    }
    const PolarizationBasis basis = u0.basis().value_or(PolarizationBasis::kLinear);
    const std::size_t n = window.size();
    const int width = hi - lo + 1;
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2 * width, 2 * width);
    for (int pol = 0; pol < 2; ++pol) {
        for (int k = lo; k <= hi; ++k) {
            std::vector<cplx> e(2 * n, 0.0);
            e[pol * n + window.offset(k)] = 1.0;
            const JointState col = apply_generator(u, theta, step, JointState(window, basis, std::move(e)));
            const Eigen::Index c = pol * width + (k - lo);
            for (int out = 0; out < 2; ++out) {
                for (int q = lo; q <= hi; ++q) {
                    g(out * width + (q - lo), c) = col.amp(out, q);
                }
            }
        }
    }
    return g;
}

double generator_sd(const OperatorFamily &u, const JointState &probe, double theta, double step) {
    const JointState psi = apply_guarded(u(theta), probe);
    const JointState hpsi = apply_generator(u, theta, step, psi);
    const double norm = psi.norm_squared();
    const double mean = inner(psi, hpsi).real() / norm;
    const double second = hpsi.norm_squared() / norm;
    return std::sqrt(std::max(0.0, second - mean * mean));
}

std::string_view scheme_name(Scheme s) {
    return s == Scheme::kSwitch ? "switch" : "multipass";
}

JointState make_probe(std::span<const OamAmplitude> oam, int l) {
    if (oam.empty()) {
        fail(ErrorKind::kEmptyDistribution, "probe has no OAM amplitudes");
    }
    int lo = oam.front().index;
    int hi = lo;
    for (const OamAmplitude &a : oam) {
        lo = std::min(lo, a.index);
        hi = std::max(hi, a.index);
    }
    return make_state(PolarizationKet::H(), oam, window_for(l, lo, hi));
}

GeneratorReport switch_generator_sd(const JointState &probe, int m, int l, double step) {
    SwitchParams{m, l, 0.0, 0.0}.validate(false);
    const Eigen::Matrix2cd rho = reduced_polarization(probe, PolarizationBasis::kCircular);
    if (std::abs(rho(0, 0) - rho(1, 1)) > kBalanceTolerance) {
        fail(ErrorKind::kInvalidArgument, "switch generator probe needs a balanced control qubit");
    }
    const OperatorFamily wqs = [m, l](double theta) { return build_WQS({m, l, theta, 0.0}); };
    GeneratorReport r;
    r.scheme = Scheme::kSwitch;
    r.m = m;
    r.l = l;
    r.delta_lz = lz_moments(probe).sd;
    r.numeric = generator_sd(wqs, probe, 0.0, step);
    r.analytic = 2.0 * m * r.delta_lz + 2.0 * m * l;
    r.exact = 2.0 * m * std::hypot(r.delta_lz, static_cast<double>(l));
    r.relative_deviation = relative_deviation(r.numeric, r.analytic);
    r.probe = describe_probe(probe);
    return r;
}

GeneratorReport multipass_generator_sd(const JointState &probe, int m, double step) {
    if (m < 1) {
        fail(ErrorKind::kInvalidArgument, "m must be at least 1");
    }
    const OperatorFamily rot = [m](double theta) { return rotation_op(2.0 * m * theta); };
    GeneratorReport r;
    r.scheme = Scheme::kMultipass;
    r.m = m;
    r.delta_lz = lz_moments(probe).sd;
    r.numeric = generator_sd(rot, probe, 0.0, step);
    r.analytic = 2.0 * m * r.delta_lz;
    r.exact = r.analytic;
    r.relative_deviation = relative_deviation(r.numeric, r.analytic);
    r.probe = describe_probe(probe);
    return r;
}

HupResult hup_check(double delta_theta, double delta_h, double slack) {
    if (!(delta_theta > 0.0) || !(delta_h > 0.0)) {
        fail(ErrorKind::kNonPositiveInput, "HUP check needs positive delta_theta and delta_h");
    }
    HupResult r;
    r.product = delta_theta * delta_h;
    r.bound = 0.5 * (1.0 - slack);
    r.satisfied = r.product >= r.bound - 1e-12;
    return r;
}

ProbabilityLaw fringe_law(int m, int l, double phi0, double visibility) {
    const double f = 4.0 * m * l;
    return [f, phi0, visibility](double theta) { return 0.5 * (1.0 - visibility * std::cos(f * theta + phi0)); };
}

double classical_fi(const ProbabilityLaw &law, double theta, double step) {
    const double p = law(theta);
    if (p < kDegenerateGuard || p > 1.0 - kDegenerateGuard) {
        fail(ErrorKind::kDegenerateOperatingPoint,
             "P = " + std::to_string(p) + " sits at a fringe extremum; the Fisher information is undefined");
    }
    const double dp = (law(theta + step) - law(theta - step)) / (2.0 * step);
    return dp * dp / (p * (1.0 - p));
}

double crb(int m, int l, double nu) {
    if (m <= 0 || l <= 0 || !(nu > 0.0)) {
        fail(ErrorKind::kNonPositiveInput, "CRB needs positive m, l and nu");
    }
    return 1.0 / (4.0 * std::sqrt(nu) * m * l);
}

int resource_count(int m, int l) {
    return 2 * (m + l);
}

double qfi_pure(double delta_h) {
    return 4.0 * delta_h * delta_h;
}

FisherReport fisher_report(const ProbabilityLaw &law, double theta, double nu) {
    if (!(nu > 0.0)) {
        fail(ErrorKind::kNonPositiveInput, "photon count must be positive");
    }
    FisherReport r;
    r.per_photon_fi = classical_fi(law, theta);
    r.nu = nu;
    r.total_fi = nu * r.per_photon_fi;
    r.crb = 1.0 / std::sqrt(r.total_fi);
    return r;
}

double quadrature_phi0(int m, int l, double theta) {
    const double raw = -std::numbers::pi / 2.0 - 4.0 * m * l * theta;
    return std::remainder(raw, 2.0 * std::numbers::pi);
}

}  // namespace qswitch
