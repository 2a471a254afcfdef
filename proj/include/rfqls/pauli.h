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

#ifndef RFQLS_PAULI_H
#define RFQLS_PAULI_H

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rfqls/linalg.h"

namespace rfqls {

/// Largest register width accepted by the dense routines in this module.
inline constexpr unsigned kMaxDenseQubits = 12;

/// An unsigned n-qubit Pauli string in symplectic form. Bit q of each mask
/// describes qubit q; a qubit with both bits set carries Y. The text form
/// lists qubit 0 first, and qubit q acts on bit q of a basis-state index.
class PauliString {
   public:
    PauliString() = default;
    PauliString(unsigned n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

    static PauliString identity(unsigned n_qubits);
    /// Parses text over {I,X,Y,Z}; throws std::invalid_argument otherwise.
    static PauliString parse(std::string_view text);

    unsigned n_qubits() const {
        return n_qubits_;
    }
    std::uint64_t x_mask() const {
        return x_;
    }
    std::uint64_t z_mask() const {
        return z_;
    }
    bool is_identity() const {
        return x_ == 0 && z_ == 0;
    }
    /// Number of Y factors; P = i^{y_count} X^x Z^z.
    unsigned y_count() const;

    bool commutes_with(const PauliString &other) const;

    std::string str() const;
    Matrix to_matrix() const;

    /// P|b> = phase(b) |b ^ x_mask>.
    Complex basis_phase(std::uint64_t basis_index) const;

    /// Lexicographic on (n_qubits, x_mask, z_mask).
    auto operator<=>(const PauliString &) const = default;

   private:
    unsigned n_qubits_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
};

/// A Pauli string with an accumulated phase i^phase.
struct PhasedPauli {
    unsigned phase = 0;  // exponent of i, in [0, 4)
    PauliString pauli;

    Complex phase_value() const;
    Matrix to_matrix() const;
    bool operator==(const PhasedPauli &) const = default;
};

/// Product a*b with the phase tracked exactly. Throws on width mismatch.
PhasedPauli pauli_product(const PhasedPauli &a, const PhasedPauli &b);

/// exp(i * angle * P).
struct PauliRotation {
    PauliString pauli;
    double angle = 0.0;

    Matrix to_matrix() const;
};

struct PauliTerm {
    double coeff = 0.0;
    PauliString pauli;
};

/// A = sum_l c_l P_l with distinct strings and nonzero real coefficients.
/// The stored order is the order used by every downstream consumer (product
/// formula sweeps, commutator constant, term sampling).
class PauliDecomposition {
   public:
    PauliDecomposition() = default;
    /// Validates widths, duplicates and zero coefficients; keeps the given order.
    explicit PauliDecomposition(std::vector<PauliTerm> terms);
    /// Same, for a possibly empty term list on a known register width.
    PauliDecomposition(std::vector<PauliTerm> terms, unsigned n_qubits);

    unsigned n_qubits() const {
        return n_qubits_;
    }
    std::size_t size() const {
        return terms_.size();
    }
    const std::vector<PauliTerm> &terms() const {
        return terms_;
    }
    const PauliTerm &operator[](std::size_t i) const {
        return terms_[i];
    }
    /// Pauli weight sum_l |c_l|.
    double lambda() const {
        return lambda_;
    }

    /// Same strings with coefficients divided by lambda().
    PauliDecomposition rescaled() const;

    nlohmann::json to_json() const;
    static PauliDecomposition from_json(const nlohmann::json &j);

   private:
    std::vector<PauliTerm> terms_;
    unsigned n_qubits_ = 0;
    double lambda_ = 0.0;
};

/// Coefficients below this magnitude are dropped by pauli_decompose.
inline constexpr double kPauliPruneThreshold = 1e-14;

/// Decomposes a dense Hermitian 2^n x 2^n matrix in the Pauli basis.
/// Terms come out sorted by (x_mask, z_mask).
PauliDecomposition pauli_decompose(const Matrix &a);

/// sum_l c_l P_l as a dense matrix (n_qubits <= kMaxDenseQubits).
Matrix materialize(const PauliDecomposition &d);

enum class CommutatorNorm {
    kExact,  // dense spectral norms, n_qubits <= 8
    kLoose,  // one-norm of the Pauli coefficients of each commutator; any width
};

/// Second-order product formula error constant for the unit-weight terms
/// (c_l / lambda) P_l of `d`, in the stored order:
///
///   f = 1/12 sum_{l0} || [ sum_{l2>=l0} P~_l2, [ sum_{l1>l0} P~_l1, P~_l0 ] ] ||
///     + 1/24 sum_{l0} || [ P~_l0, sum_{l1>l0} P~_l1 ] ||
///
/// Returns exactly 0 when all strings pairwise commute.
double commutator_constant(const PauliDecomposition &d, CommutatorNorm norm = CommutatorNorm::kExact);

/// Applies P to a state vector in place.
void apply_pauli(const PauliString &p, Vector &state);
/// state <- exp(i angle P) state
void apply_rotation(const PauliRotation &rot, Vector &state);
/// m <- m * P
void right_multiply_pauli(Matrix &m, const PauliString &p);
/// m <- m * exp(i angle P)
void right_multiply_rotation(Matrix &m, const PauliRotation &rot);

}  // namespace rfqls

#endif
