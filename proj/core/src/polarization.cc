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

#include "qswitch/polarization.h"

#include <cmath>
#include <limits>

namespace qswitch {

namespace {

// Rows are <L| and <R| written in the (H, V) basis.
Eigen::Matrix2cd linear_to_circular() {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    Eigen::Matrix2cd c;
    c << s, -i * s, s, i * s;
    return c;
}

}  // namespace

std::string_view basis_name(PolarizationBasis basis) {
    return basis == PolarizationBasis::kLinear ? "linear" : "circular";
}

Eigen::Matrix2cd basis_change(PolarizationBasis from, PolarizationBasis to) {
    if (from == to) {
        return Eigen::Matrix2cd::Identity();
    }
    if (from == PolarizationBasis::kLinear) {
        return linear_to_circular();
    }
    return linear_to_circular().adjoint();
}

PolarizationKet PolarizationKet::H() {
    return {PolarizationBasis::kLinear, Eigen::Vector2cd(1.0, 0.0)};
}
PolarizationKet PolarizationKet::V() {
    return {PolarizationBasis::kLinear, Eigen::Vector2cd(0.0, 1.0)};
}
PolarizationKet PolarizationKet::L() {
    return {PolarizationBasis::kCircular, Eigen::Vector2cd(1.0, 0.0)};
}
PolarizationKet PolarizationKet::R() {
    return {PolarizationBasis::kCircular, Eigen::Vector2cd(0.0, 1.0)};
}

PolarizationKet PolarizationKet::in_basis(PolarizationBasis target) const {
    return {target, basis_change(basis, target) * amp};
}

JonesMatrix JonesMatrix::in_basis(PolarizationBasis target) const {
    if (target == basis) {
        return *this;
    }
    Eigen::Matrix2cd c = basis_change(basis, target);
    return {c * m * c.adjoint(), target};
}

JonesMatrix JonesMatrix::operator*(const JonesMatrix &rhs) const {
    return {m * rhs.in_basis(basis).m, basis};
}

double JonesMatrix::unitarity_defect() const {
    return (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

cplx JonesMatrix::identity_factor(double tol) const {
    cplx c = 0.5 * (m(0, 0) + m(1, 1));
    double scale = std::max(1.0, std::abs(c));
    if ((m - c * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > tol * scale) {
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }
    return c;
}

Eigen::Matrix2cd rotation_matrix(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Eigen::Matrix2cd r;
    r << c, s, -s, c;
    return r;
}

}  // namespace qswitch
