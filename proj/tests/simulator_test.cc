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

#include "rfqls/simulator.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

namespace rfqls {
namespace {

Vector random_unit(std::size_t dim, RngStream &rng) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        v(i) = Complex(rng.normal(), rng.normal());
    }
    return v / v.norm();
}

Matrix random_unitary(std::size_t dim, RngStream &rng) {
    Matrix g(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            g(r, c) = Complex(rng.normal(), rng.normal());
        }
    }
    return Eigen::HouseholderQR<Matrix>(g).householderQ();
}

TEST(StateVector, Validation) {
    EXPECT_THROW(StateVector(Vector::Zero(3)), std::invalid_argument);
    Vector v = Vector::Zero(4);
    v(0) = 2.0;
    EXPECT_THROW(StateVector{v}, std::invalid_argument);
    StateVector b = StateVector::basis(2, 3);
    EXPECT_EQ(b.n_qubits(), 2u);
    EXPECT_EQ(b.amplitudes()(3), Complex(1.0));
    EXPECT_THROW(StateVector::basis(2, 4), std::invalid_argument);
    StateVector j = StateVector::from_json(nlohmann::json::parse("[[0.6, 0], [0, 0.8]]"), 1);
    EXPECT_EQ(j.amplitudes()(1), Complex(0.0, 0.8));
    EXPECT_THROW(StateVector::from_json(nlohmann::json::parse("[1, 0]"), 2), std::invalid_argument);
}

TEST(ExactEvolution, ZeroTime) {
    PauliDecomposition d({{0.3, PauliString::parse("XZ")}, {-0.7, PauliString::parse("YY")}});
    EXPECT_LT(max_abs(exact_evolution(d, 0.0) - Matrix::Identity(4, 4)), 1e-14);
}

TEST(ExactEvolution, SinglePauliClosedForm) {
    PauliDecomposition d({{1.0, PauliString::parse("X")}});
    double theta = 0.83;
    Matrix expected = std::cos(theta) * Matrix::Identity(2, 2) - kI * std::sin(theta) * d[0].pauli.to_matrix();
    EXPECT_LT(max_abs(exact_evolution(d, theta) - expected), 1e-14);
}

TEST(ExactEvolution, GroupLawAndUnitarity) {
    PauliDecomposition d({{0.3, PauliString::parse("XZ")}, {-0.7, PauliString::parse("YY")},
                          {0.2, PauliString::parse("IX")}});
    Matrix a = exact_evolution(d, 1.7);
    Matrix b = exact_evolution(d, -0.4);
    EXPECT_LT(max_abs(a * b - exact_evolution(d, 1.3)), 1e-12);
    EXPECT_LT(max_abs(a.adjoint() * a - Matrix::Identity(4, 4)), 1e-12);
    PauliDecomposition wide({{1.0, PauliString::identity(11)}});
    EXPECT_THROW(exact_evolution(wide, 1.0), std::invalid_argument);
}

TEST(Overlap, Examples) {
    StateVector s0 = StateVector::basis(2, 0);
    StateVector s1 = StateVector::basis(2, 1);
    Matrix id = Matrix::Identity(4, 4);
    EXPECT_EQ(overlap(s0, id, s0), Complex(1.0));
    EXPECT_EQ(overlap(s0, id, s1), Complex(0.0));
    EXPECT_THROW(overlap(s0, Matrix::Identity(2, 2), s0), std::invalid_argument);
}

TEST(Overlap, ConjugateTransposeIdentity) {
    RngStream rng(2, 0);
    for (int trial = 0; trial < 20; ++trial) {
        StateVector phi(random_unit(8, rng));
        StateVector psi(random_unit(8, rng));
        Matrix u = random_unitary(8, rng);
        Complex a = overlap(phi, u, psi);
        Complex b = overlap(psi, u.adjoint(), phi);
        EXPECT_LT(std::abs(a - std::conj(b)), 1e-13);
        EXPECT_LE(std::abs(a), 1.0 + 1e-10);
    }
}

TEST(HadamardShot, IdentityRealPartAlwaysPlusOne) {
    StateVector s = StateVector::basis(1, 0);
    Matrix id = Matrix::Identity(2, 2);
    RngStream rng(3, 0);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(hadamard_shot(s, id, s, Part::kReal, NoiseMode::kBernoulli, rng).value, 1.0);
    }
}

TEST(HadamardShot, IdentityImaginaryPartAveragesToZero) {
    StateVector s = StateVector::basis(1, 0);
    Matrix id = Matrix::Identity(2, 2);
    RngStream rng(4, 0);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        ShotOutcome o = hadamard_shot(s, id, s, Part::kImaginary, NoiseMode::kBernoulli, rng);
        EXPECT_TRUE(o.value == 1.0 || o.value == -1.0);
        EXPECT_EQ(o.part, Part::kImaginary);
        sum += o.value;
    }
    EXPECT_LT(std::abs(sum / n), 4.0 / std::sqrt(n));
}

TEST(HadamardShot, MeansAndVariancesPerMode) {
    RngStream setup(5, 0);
    StateVector phi(random_unit(4, setup));
    StateVector psi(random_unit(4, setup));
    Matrix u = random_unitary(4, setup);
    Complex v = overlap(phi, u, psi);
    const int n = 100000;
    for (Part part : {Part::kReal, Part::kImaginary}) {
        double x = part == Part::kReal ? v.real() : v.imag();
        for (NoiseMode mode : {NoiseMode::kBernoulli, NoiseMode::kGaussian}) {
            RngStream rng(6, static_cast<std::uint64_t>(mode));
            double sum = 0.0;
            double sq = 0.0;
            for (int i = 0; i < n; ++i) {
                double s = hadamard_shot(phi, u, psi, part, mode, rng).value;
                sum += s;
                sq += s * s;
            }
            double mean = sum / n;
            double var = sq / n - mean * mean;
            EXPECT_LT(std::abs(mean - x), 4.0 * std::sqrt(var / n));
            double expected_var = mode == NoiseMode::kBernoulli ? 1.0 - x * x : 1.0;
            EXPECT_NEAR(var, expected_var, 0.02);
        }
        RngStream rng(7, 0);
        EXPECT_EQ(hadamard_shot(phi, u, psi, part, NoiseMode::kExact, rng).value, x);
    }
}

TEST(HadamardShot, RejectsNonUnitaryExpectation) {
    RngStream rng(8, 0);
    EXPECT_THROW(shot_from_overlap(Complex(1.01, 0.0), Part::kReal, NoiseMode::kExact, rng), std::logic_error);
    EXPECT_NO_THROW(shot_from_overlap(Complex(1.0 + 1e-12, 0.0), Part::kReal, NoiseMode::kBernoulli, rng));
}

TEST(NoiseMode, Parse) {
    EXPECT_EQ(parse_noise_mode("gaussian"), NoiseMode::kGaussian);
    EXPECT_EQ(to_string(NoiseMode::kBernoulli), "bernoulli");
    EXPECT_THROW(parse_noise_mode("poisson"), std::invalid_argument);
}

}  // namespace
}  // namespace rfqls
