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

#ifndef RFQLS_SIMULATOR_H
#define RFQLS_SIMULATOR_H

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "rfqls/linalg.h"
#include "rfqls/pauli.h"
#include "rfqls/rng.h"

namespace rfqls {

/// A unit-norm state on n qubits.
class StateVector {
   public:
    /// Throws unless the length is a power of two and the norm is 1 within 1e-10.
    explicit StateVector(Vector amplitudes);
    static StateVector basis(unsigned n_qubits, std::uint64_t index);
    /// Accepts an integer basis index (with `n_qubits`) or a list of
    /// amplitudes given as reals or [re, im] pairs.
    static StateVector from_json(const nlohmann::json &j, unsigned n_qubits);

    const Vector &amplitudes() const {
        return amplitudes_;
    }
    unsigned n_qubits() const {
        return n_qubits_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }

   private:
    Vector amplitudes_;
    unsigned n_qubits_ = 0;
};

inline constexpr unsigned kMaxSimulatorQubits = 10;

/// exp(-i materialize(d) tau) via Hermitian eigendecomposition.
Matrix exact_evolution(const PauliDecomposition &d, double tau);

/// <phi| U |psi>
Complex overlap(const StateVector &phi, const Matrix &u, const StateVector &psi);

enum class Part { kReal, kImaginary };
enum class NoiseMode { kBernoulli, kGaussian, kExact };

NoiseMode parse_noise_mode(const std::string &text);
std::string to_string(NoiseMode mode);

struct ShotOutcome {
    double value = 0.0;
    Part part = Part::kReal;
};

/// One Hadamard-test outcome whose mean is Re or Im of `v`:
/// bernoulli returns +-1 with P(+1) = (1 + v_part)/2, gaussian returns
/// v_part + N(0, 1), exact returns v_part. Throws std::logic_error when
/// |v_part| > 1 + 1e-9.
ShotOutcome shot_from_overlap(Complex v, Part part, NoiseMode mode, RngStream &rng);

ShotOutcome hadamard_shot(const StateVector &phi, const Matrix &u, const StateVector &psi, Part part,
                          NoiseMode mode, RngStream &rng);

}  // namespace rfqls

#endif
