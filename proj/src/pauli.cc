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

#include "rfqls/pauli.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace rfqls {

namespace {

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::uint64_t width_mask(unsigned n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

unsigned popcount(std::uint64_t v) {
    return static_cast<unsigned>(std::popcount(v));
}

void require_same_width(const PauliString &a, const PauliString &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument(
            "Pauli width mismatch: " + std::to_string(a.n_qubits()) + " vs " + std::to_string(b.n_qubits()));
    }
}

void require_dense_width(unsigned n, unsigned limit, const char *what) {
    if (n > limit) {
        throw std::invalid_argument(
            std::string(what) + ": " + std::to_string(n) + " qubits exceeds the dense limit of " +
            std::to_string(limit));
    }
}

// Sparse Pauli-basis operator used by the loose commutator bound.
using PauliSum = std::map<std::pair<std::uint64_t, std::uint64_t>, Complex>;

PauliSum commutator(const PauliSum &a, const PauliSum &b, unsigned n) {
    PauliSum out;
    for (const auto &[ka, ca] : a) {
        PauliString pa(n, ka.first, ka.second);
        for (const auto &[kb, cb] : b) {
            PauliString pb(n, kb.first, kb.second);
            if (pa.commutes_with(pb)) {
                continue;
            }
            // Anticommuting: [Pa, Pb] = 2 Pa Pb.
            PhasedPauli prod = pauli_product({0, pa}, {0, pb});
            out[{prod.pauli.x_mask(), prod.pauli.z_mask()}] += 2.0 * ca * cb * prod.phase_value();
        }
    }
    return out;
}

double one_norm(const PauliSum &s) {
    double total = 0.0;
    for (const auto &[k, c] : s) {
        total += std::abs(c);
    }
    return total;
}

}  // namespace

PauliString::PauliString(unsigned n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
    if (n_qubits > 63) {
        throw std::invalid_argument("Pauli strings support at most 63 qubits");
    }
    std::uint64_t m = width_mask(n_qubits);
    if ((x_mask & ~m) || (z_mask & ~m)) {
        throw std::invalid_argument("Pauli mask has bits beyond the register width");
    }
}

PauliString PauliString::identity(unsigned n_qubits) {
    return PauliString(n_qubits, 0, 0);
}

PauliString PauliString::parse(std::string_view text) {
    if (text.empty() || text.size() > 63) {
        throw std::invalid_argument("Pauli text must have 1 to 63 characters");
    }
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (std::size_t q = 0; q < text.size(); ++q) {
        std::uint64_t bit = std::uint64_t{1} << q;
        switch (text[q]) {
            case 'I':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw std::invalid_argument("invalid Pauli character '" + std::string(1, text[q]) + "' in \"" +
                                            std::string(text) + "\"");
        }
    }
    return PauliString(static_cast<unsigned>(text.size()), x, z);
}

unsigned PauliString::y_count() const {
    return popcount(x_ & z_);
}

bool PauliString::commutes_with(const PauliString &other) const {
    require_same_width(*this, other);
    return (popcount(x_ & other.z_) + popcount(z_ & other.x_)) % 2 == 0;
}

std::string PauliString::str() const {
    std::string out(n_qubits_, 'I');
    for (unsigned q = 0; q < n_qubits_; ++q) {
        bool xb = (x_ >> q) & 1;
        bool zb = (z_ >> q) & 1;
        out[q] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return out;
}

Complex PauliString::basis_phase(std::uint64_t basis_index) const {
    return kIPowers[(y_count() + 2 * popcount(basis_index & z_)) & 3];
}

Matrix PauliString::to_matrix() const {
    require_dense_width(n_qubits_, kMaxDenseQubits, "PauliString::to_matrix");
    std::uint64_t dim = std::uint64_t{1} << n_qubits_;
    Matrix m = Matrix::Zero(dim, dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        m(b ^ x_, b) = basis_phase(b);
    }
    return m;
}

Complex PhasedPauli::phase_value() const {
    return kIPowers[phase & 3];
}

Matrix PhasedPauli::to_matrix() const {
    return phase_value() * pauli.to_matrix();
}

PhasedPauli pauli_product(const PhasedPauli &a, const PhasedPauli &b) {
    require_same_width(a.pauli, b.pauli);
    // P = i^{|x&z|} X^x Z^z, and Z^z1 X^x2 = (-1)^{|z1&x2|} X^x2 Z^z1.
    std::uint64_t x = a.pauli.x_mask() ^ b.pauli.x_mask();
    std::uint64_t z = a.pauli.z_mask() ^ b.pauli.z_mask();
    int e = static_cast<int>(a.phase + b.phase + a.pauli.y_count() + b.pauli.y_count() +
                             2 * popcount(a.pauli.z_mask() & b.pauli.x_mask())) -
            static_cast<int>(popcount(x & z));
    PhasedPauli out;
    out.phase = static_cast<unsigned>(((e % 4) + 4) % 4);
    out.pauli = PauliString(a.pauli.n_qubits(), x, z);
    return out;
}

Matrix PauliRotation::to_matrix() const {
    Matrix p = pauli.to_matrix();
    return std::cos(angle) * Matrix::Identity(p.rows(), p.cols()) + kI * std::sin(angle) * p;
}

PauliDecomposition::PauliDecomposition(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw std::invalid_argument("empty decomposition needs an explicit register width");
    }
    n_qubits_ = terms_.front().pauli.n_qubits();
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (const auto &t : terms_) {
        if (t.pauli.n_qubits() != n_qubits_) {
            throw std::invalid_argument("decomposition terms have mixed register widths");
        }
        if (t.coeff == 0.0 || !std::isfinite(t.coeff)) {
            throw std::invalid_argument("decomposition coefficient for " + t.pauli.str() + " is zero or non-finite");
        }
        if (!seen.insert({t.pauli.x_mask(), t.pauli.z_mask()}).second) {
            throw std::invalid_argument("duplicate Pauli string " + t.pauli.str());
        }
        lambda_ += std::abs(t.coeff);
    }
}

PauliDecomposition::PauliDecomposition(std::vector<PauliTerm> terms, unsigned n_qubits) {
    if (terms.empty()) {
        n_qubits_ = n_qubits;
        return;
    }
    *this = PauliDecomposition(std::move(terms));
    if (n_qubits_ != n_qubits) {
        throw std::invalid_argument("decomposition width does not match the declared register width");
    }
}

PauliDecomposition PauliDecomposition::rescaled() const {
    if (lambda_ == 0.0) {
        throw std::domain_error("cannot rescale a zero operator");
    }
    std::vector<PauliTerm> out = terms_;
    for (auto &t : out) {
        t.coeff /= lambda_;
    }
    return PauliDecomposition(std::move(out), n_qubits_);
}

nlohmann::json PauliDecomposition::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &t : terms_) {
        out.push_back({{"pauli", t.pauli.str()}, {"coeff", t.coeff}});
    }
    return out;
}

PauliDecomposition PauliDecomposition::from_json(const nlohmann::json &j) {
    const nlohmann::json &list = j.is_object() ? j.at("terms") : j;
    if (!list.is_array()) {
        throw std::invalid_argument("decomposition JSON must be a list of {pauli, coeff} objects");
    }
    std::vector<PauliTerm> terms;
    for (const auto &item : list) {
        terms.push_back({item.at("coeff").get<double>(), PauliString::parse(item.at("pauli").get<std::string>())});
    }
    if (terms.empty() && j.is_object() && j.contains("n_qubits")) {
        return PauliDecomposition({}, j.at("n_qubits").get<unsigned>());
    }
    return PauliDecomposition(std::move(terms));
}

PauliDecomposition pauli_decompose(const Matrix &a) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw std::invalid_argument("pauli_decompose needs a non-empty square matrix");
    }
    auto dim = static_cast<std::uint64_t>(a.rows());
    if (!std::has_single_bit(dim)) {
        throw std::invalid_argument("pauli_decompose: dimension " + std::to_string(dim) + " is not a power of two");
    }
    auto n = static_cast<unsigned>(std::countr_zero(dim));
    require_dense_width(n, kMaxDenseQubits, "pauli_decompose");
    double scale = std::max(1.0, max_abs(a));
    if (hermiticity_defect(a) > 1e-10 * scale) {
        throw std::invalid_argument("pauli_decompose: matrix is not Hermitian");
    }
    std::vector<PauliTerm> terms;
    for (std::uint64_t x = 0; x < dim; ++x) {
        for (std::uint64_t z = 0; z < dim; ++z) {
            PauliString p(n, x, z);
            // Tr(P A) = sum_c <c|A|c^x> * phase(c)
            Complex tr = 0.0;
            for (std::uint64_t c = 0; c < dim; ++c) {
                tr += p.basis_phase(c) * a(c, c ^ x);
            }
            double coeff = tr.real() / static_cast<double>(dim);
            if (std::abs(coeff) > kPauliPruneThreshold) {
                terms.push_back({coeff, p});
            }
        }
    }
    return PauliDecomposition(std::move(terms), n);
}

Matrix materialize(const PauliDecomposition &d) {
    require_dense_width(d.n_qubits(), kMaxDenseQubits, "materialize");
    std::uint64_t dim = std::uint64_t{1} << d.n_qubits();
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto &t : d.terms()) {
        for (std::uint64_t b = 0; b < dim; ++b) {
            m(b ^ t.pauli.x_mask(), b) += t.coeff * t.pauli.basis_phase(b);
        }
    }
    return m;
}

double commutator_constant(const PauliDecomposition &d, CommutatorNorm norm) {
    const auto &terms = d.terms();
    const std::size_t L = terms.size();
    bool all_commute = true;
    for (std::size_t a = 0; a < L && all_commute; ++a) {
        for (std::size_t b = a + 1; b < L; ++b) {
            if (!terms[a].pauli.commutes_with(terms[b].pauli)) {
                all_commute = false;
                break;
            }
        }
    }
    if (all_commute) {
        return 0.0;
    }
    const double lambda = d.lambda();
    const unsigned n = d.n_qubits();
    double nested = 0.0;
    double single = 0.0;

    if (norm == CommutatorNorm::kLoose) {
        PauliSum suffix;  // sum_{l1 > l0}
        for (std::size_t i = L; i-- > 0;) {
            const auto &t = terms[i];
            PauliSum p0{{{t.pauli.x_mask(), t.pauli.z_mask()}, Complex(t.coeff / lambda)}};
            PauliSum inner = commutator(suffix, p0, n);
            PauliSum with_self = suffix;
            with_self[{t.pauli.x_mask(), t.pauli.z_mask()}] += t.coeff / lambda;
            nested += one_norm(commutator(with_self, inner, n));
            single += one_norm(inner);  // ||[P0, S]|| = ||[S, P0]||
            suffix = std::move(with_self);
        }
        return nested / 12.0 + single / 24.0;
    }

    require_dense_width(n, 8, "commutator_constant (exact norms)");
    std::uint64_t dim = std::uint64_t{1} << n;
    Matrix suffix = Matrix::Zero(dim, dim);
    for (std::size_t i = L; i-- > 0;) {
        Matrix p0 = (terms[i].coeff / lambda) * terms[i].pauli.to_matrix();
        Matrix inner = suffix * p0 - p0 * suffix;  // anti-Hermitian
        Matrix with_self = suffix + p0;
        Matrix outer = with_self * inner - inner * with_self;  // Hermitian
        nested += hermitian_spectral_norm(outer);
        Matrix inner_h = kI * inner;
        single += hermitian_spectral_norm(inner_h);
        suffix = std::move(with_self);
    }
    return nested / 12.0 + single / 24.0;
}

void apply_pauli(const PauliString &p, Vector &state) {
    const auto dim = static_cast<std::uint64_t>(state.size());
    const std::uint64_t x = p.x_mask();
    if (x == 0) {
        for (std::uint64_t b = 0; b < dim; ++b) {
            state(b) *= p.basis_phase(b);
        }
        return;
    }
    for (std::uint64_t b = 0; b < dim; ++b) {
        std::uint64_t b2 = b ^ x;
        if (b2 < b) {
            continue;
        }
        Complex vb = state(b);
        Complex vb2 = state(b2);
        state(b2) = p.basis_phase(b) * vb;
        state(b) = p.basis_phase(b2) * vb2;
    }
}

void apply_rotation(const PauliRotation &rot, Vector &state) {
    const auto dim = static_cast<std::uint64_t>(state.size());
    const PauliString &p = rot.pauli;
    const std::uint64_t x = p.x_mask();
    const double c = std::cos(rot.angle);
    const double s = std::sin(rot.angle);
    if (x == 0) {
        for (std::uint64_t b = 0; b < dim; ++b) {
            // Diagonal P with eigenvalue +-1 at b.
            state(b) *= Complex(c, s * p.basis_phase(b).real());
        }
        return;
    }
    for (std::uint64_t b = 0; b < dim; ++b) {
        std::uint64_t b2 = b ^ x;
        if (b2 < b) {
            continue;
        }
        Complex vb = state(b);
        Complex vb2 = state(b2);
        state(b) = c * vb + kI * s * p.basis_phase(b2) * vb2;
        state(b2) = c * vb2 + kI * s * p.basis_phase(b) * vb;
    }
}

void right_multiply_pauli(Matrix &m, const PauliString &p) {
    // (m P)(:, c) = phase(c) * m(:, c ^ x)
    const auto dim = static_cast<std::uint64_t>(m.cols());
    const std::uint64_t x = p.x_mask();
    for (std::uint64_t c = 0; c < dim; ++c) {
        std::uint64_t c2 = c ^ x;
        if (c2 < c) {
            continue;
        }
        if (c2 == c) {
            m.col(c) *= p.basis_phase(c);
            continue;
        }
        Vector col = m.col(c);
        m.col(c) = p.basis_phase(c) * m.col(c2);
        m.col(c2) = p.basis_phase(c2) * col;
    }
}

void right_multiply_rotation(Matrix &m, const PauliRotation &rot) {
    const auto dim = static_cast<std::uint64_t>(m.cols());
    const PauliString &p = rot.pauli;
    const std::uint64_t x = p.x_mask();
    const Complex c = std::cos(rot.angle);
    const Complex is = kI * std::sin(rot.angle);
    for (std::uint64_t col = 0; col < dim; ++col) {
        std::uint64_t col2 = col ^ x;
        if (col2 < col) {
            continue;
        }
        if (col2 == col) {
            m.col(col) *= c + is * p.basis_phase(col);
            continue;
        }
        Vector a = m.col(col);
        Vector b = m.col(col2);
        m.col(col) = c * a + is * p.basis_phase(col) * b;
        m.col(col2) = c * b + is * p.basis_phase(col2) * a;
    }
}

}  // namespace rfqls
