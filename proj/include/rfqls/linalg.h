// Copyright 2026 The rfqls Authors
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

#ifndef RFQLS_LINALG_H
#define RFQLS_LINALG_H

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace rfqls {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest entrywise modulus.
double max_abs(const Matrix &m);

/// Largest singular value.
double spectral_norm(const Matrix &m);

/// Spectral norm of a Hermitian matrix via its eigenvalues (cheaper than an SVD).
double hermitian_spectral_norm(const Matrix &h);

/// Max-abs distance between `m` and its conjugate transpose.
double hermiticity_defect(const Matrix &m);

/// Computes m^power by repeated squaring. power == 0 yields the identity.
Matrix matrix_power(const Matrix &m, std::uint64_t power);

/// Eigendecomposition of a Hermitian matrix, kept around so that e^{-iHt}
/// can be formed (or applied) for many t without refactoring.
class HermitianSpectrum {
   public:
    explicit HermitianSpectrum(const Matrix &h);

    const Eigen::VectorXd &eigenvalues() const {
        return eigenvalues_;
    }
    const Matrix &eigenvectors() const {
        return eigenvectors_;
    }

    /// e^{-i H t}
    Matrix evolution(double t) const;

    /// <phi| e^{-i H t} |psi>
    Complex evolution_overlap(const Vector &phi, const Vector &psi, double t) const;

    /// H^{-1}; throws std::domain_error on a (numerically) singular input.
    Matrix inverse() const;

   private:
    Eigen::VectorXd eigenvalues_;
    Matrix eigenvectors_;
};

}  // namespace rfqls

#endif
