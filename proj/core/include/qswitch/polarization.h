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

#ifndef QSWITCH_POLARIZATION_H_
#define QSWITCH_POLARIZATION_H_

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace qswitch {

using cplx = std::complex<double>;

/// Polarization basis of the two-level control system.
///
/// Index conventions are fixed once for the whole library:
///   linear:   0 = |H>, 1 = |V>
///   circular: 0 = |L>, 1 = |R>
/// with |R> = (|H> - i|V>)/sqrt(2) and |L> = (|H> + i|V>)/sqrt(2).
/// The control qubit of the switch uses |0> = |L>, |1> = |R>, so circular
/// indices double as control-qubit indices.
enum class PolarizationBasis { kLinear, kCircular };

std::string_view basis_name(PolarizationBasis basis);

/// Matrix taking amplitude pairs expressed in `from` into `to`.
Eigen::Matrix2cd basis_change(PolarizationBasis from, PolarizationBasis to);

/// A pure polarization ket with amplitudes in a given basis.
struct PolarizationKet {
    PolarizationBasis basis = PolarizationBasis::kLinear;
    Eigen::Vector2cd amp = Eigen::Vector2cd(1.0, 0.0);

    static PolarizationKet H();
    static PolarizationKet V();
    static PolarizationKet L();
    static PolarizationKet R();

    PolarizationKet in_basis(PolarizationBasis target) const;
};

/// 2x2 complex operator on the polarization factor.
struct JonesMatrix {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    PolarizationBasis basis = PolarizationBasis::kLinear;

    JonesMatrix in_basis(PolarizationBasis target) const;
    JonesMatrix operator*(const JonesMatrix &rhs) const;

    /// Max-abs entry of M^dagger M - I.
    double unitarity_defect() const;
    bool is_unitary(double tol = 1e-12) const {
        return unitarity_defect() <= tol;
    }
    /// If the matrix is c*I (within tol), returns c. Otherwise returns NaN.
    cplx identity_factor(double tol = 1e-12) const;
};

/// 2x2 rotation R(a) = [[cos a, sin a], [-sin a, cos a]] in the linear basis.
Eigen::Matrix2cd rotation_matrix(double angle);

}  // namespace qswitch

#endif  // QSWITCH_POLARIZATION_H_
