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

#include <bit>
#include <cmath>
#include <stdexcept>

namespace rfqls {

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    auto n = static_cast<std::uint64_t>(amplitudes_.size());
    if (n == 0 || !std::has_single_bit(n)) {
        throw std::invalid_argument("state length must be a power of two");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("state must have unit norm");
    }
    n_qubits_ = static_cast<unsigned>(std::countr_zero(n));
}

StateVector StateVector::basis(unsigned n_qubits, std::uint64_t index) {
    if (n_qubits > 30) {
        throw std::invalid_argument("basis state too wide");
    }
    std::uint64_t dim = std::uint64_t{1} << n_qubits;
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::from_json(const nlohmann::json &j, unsigned n_qubits) {
    if (j.is_number_integer()) {
        return basis(n_qubits, j.get<std::uint64_t>());
    }
    if (!j.is_array()) {
        throw std::invalid_argument("state must be a basis index or an amplitude list");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto &e = j[i];
        if (e.is_number()) {
            v(static_cast<Eigen::Index>(i)) = e.get<double>();
        } else if (e.is_array() && e.size() == 2) {
            v(static_cast<Eigen::Index>(i)) = Complex(e[0].get<double>(), e[1].get<double>());
        } else {
            throw std::invalid_argument("amplitudes must be reals or [re, im] pairs");
        }
    }
    StateVector s(std::move(v));
    if (s.n_qubits() != n_qubits) {
        throw std::invalid_argument("state width does not match the matrix");
    }
    return s;
}

Matrix exact_evolution(const PauliDecomposition &d, double tau) {
    if (d.n_qubits() > kMaxSimulatorQubits) {
        throw std::invalid_argument("exact evolution limited to " + std::to_string(kMaxSimulatorQubits) +
                                    " qubits");
    }
    return HermitianSpectrum(materialize(d)).evolution(tau);
}

Complex overlap(const StateVector &phi, const Matrix &u, const StateVector &psi) {
    if (u.rows() != u.cols() || static_cast<std::size_t>(u.rows()) != phi.dim() || phi.dim() != psi.dim()) {
        throw std::invalid_argument("overlap dimension mismatch");
    }
    return phi.amplitudes().dot(u * psi.amplitudes());
}

NoiseMode parse_noise_mode(const std::string &text) {
    if (text == "bernoulli") {
        return NoiseMode::kBernoulli;
    }
    if (text == "gaussian") {
        return NoiseMode::kGaussian;
    }
    if (text == "exact") {
        return NoiseMode::kExact;
    }
    throw std::invalid_argument("unknown noise mode '" + text + "'; expected bernoulli, gaussian or exact");
}

std::string to_string(NoiseMode mode) {
    switch (mode) {
        case NoiseMode::kBernoulli:
            return "bernoulli";
        case NoiseMode::kGaussian:
            return "gaussian";
        case NoiseMode::kExact:
            return "exact";
    }
    return "unknown";
}

ShotOutcome shot_from_overlap(Complex v, Part part, NoiseMode mode, RngStream &rng) {
    double x = part == Part::kReal ? v.real() : v.imag();
    if (!(std::abs(x) <= 1.0 + 1e-9)) {
        throw std::logic_error("Hadamard test expectation outside [-1, 1]; kernel is not unitary");
    }
    ShotOutcome out;
    out.part = part;
    switch (mode) {
        case NoiseMode::kBernoulli:
            out.value = rng.uniform() < (1.0 + x) / 2.0 ? 1.0 : -1.0;
            break;
        case NoiseMode::kGaussian:
            out.value = x + rng.normal();
            break;
        case NoiseMode::kExact:
            out.value = x;
            break;
    }
    return out;
}

ShotOutcome hadamard_shot(const StateVector &phi, const Matrix &u, const StateVector &psi, Part part,
                          NoiseMode mode, RngStream &rng) {
    return shot_from_overlap(overlap(phi, u, psi), part, mode, rng);
}

}  // namespace rfqls
