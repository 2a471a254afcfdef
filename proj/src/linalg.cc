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

#include "rfqls/linalg.h"

#include <cmath>
#include <stdexcept>

namespace rfqls {

double max_abs(const Matrix &m) {
    double best = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            best = std::max(best, std::abs(m(r, c)));
        }
    }
    return best;
}

double spectral_norm(const Matrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double hermitian_spectral_norm(const Matrix &h) {
    if (h.size() == 0) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix &m) {
    return max_abs(m - m.adjoint());
}

Matrix matrix_power(const Matrix &m, std::uint64_t power) {
    Matrix result = Matrix::Identity(m.rows(), m.cols());
    Matrix base = m;
    while (power > 0) {
        if (power & 1) {
            result = result * base;
        }
        power >>= 1;
        if (power > 0) {
            base = base * base;
        }
    }
    return result;
}

HermitianSpectrum::HermitianSpectrum(const Matrix &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("Hermitian eigensolve failed");
    }
    eigenvalues_ = eig.eigenvalues();
    eigenvectors_ = eig.eigenvectors();
}

Matrix HermitianSpectrum::evolution(double t) const {
    Vector phases(eigenvalues_.size());
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
        phases(k) = std::exp(-kI * (eigenvalues_(k) * t));
    }
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Complex HermitianSpectrum::evolution_overlap(const Vector &phi, const Vector &psi, double t) const {
    Vector a = eigenvectors_.adjoint() * phi;
    Vector b = eigenvectors_.adjoint() * psi;
    Complex acc = 0.0;
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
        acc += std::conj(a(k)) * std::exp(-kI * (eigenvalues_(k) * t)) * b(k);
    }
    return acc;
}

Matrix HermitianSpectrum::inverse() const {
    double scale = eigenvalues_.cwiseAbs().maxCoeff();
    Vector inv(eigenvalues_.size());
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
        if (std::abs(eigenvalues_(k)) <= 1e-14 * scale) {
            throw std::domain_error("matrix is singular to working precision");
        }
        inv(k) = 1.0 / eigenvalues_(k);
    }
    return eigenvectors_ * inv.asDiagonal() * eigenvectors_.adjoint();
}

}  // namespace rfqls
