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

#include "rfqls/kernel_pf.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rfqls {

namespace {

std::uint64_t ceil_positive(double v) {
    if (!std::isfinite(v) || v > 9.0e18) {
        throw std::overflow_error("Trotter number overflows 64 bits");
    }
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(v)));
}

}  // namespace

std::uint64_t trotter_number(double f, double tau, double eps_pf) {
    if (!(f >= 0.0)) {
        throw std::invalid_argument("commutator constant must be nonnegative");
    }
    if (!(eps_pf > 0.0)) {
        throw std::invalid_argument("product formula tolerance must be positive");
    }
    double a = std::abs(tau);
    return ceil_positive(std::sqrt(f * a * a * a / eps_pf));
}

TrotterPolicy TrotterPolicy::fixed(std::uint64_t r) {
    if (r < 1) {
        throw std::invalid_argument("fixed Trotter number must be >= 1");
    }
    TrotterPolicy p;
    p.kind_ = Kind::kFixed;
    p.fixed_r_ = r;
    return p;
}

TrotterPolicy TrotterPolicy::quadratic(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("quadratic Trotter coefficient must be positive");
    }
    TrotterPolicy p;
    p.kind_ = Kind::kQuadratic;
    p.c_ = c;
    return p;
}

TrotterPolicy TrotterPolicy::certified(double f, double eps_pf) {
    if (!(f >= 0.0) || !(eps_pf > 0.0)) {
        throw std::invalid_argument("certified policy needs f >= 0 and eps > 0");
    }
    TrotterPolicy p;
    p.kind_ = Kind::kCertified;
    p.f_ = f;
    p.eps_ = eps_pf;
    return p;
}

TrotterPolicy TrotterPolicy::parse(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    try {
        if (parts.size() == 2 && parts[0] == "fixed") {
            return fixed(std::stoull(parts[1]));
        }
        if (parts.size() == 2 && parts[0] == "quadratic") {
            return quadratic(std::stod(parts[1]));
        }
        if (parts.size() == 3 && parts[0] == "certified") {
            return certified(std::stod(parts[1]), std::stod(parts[2]));
        }
    } catch (const std::logic_error &) {
    }
    throw std::invalid_argument("bad Trotter policy '" + text +
                                "'; expected fixed:<r>, quadratic:<c> or certified:<f>:<eps>");
}

std::uint64_t TrotterPolicy::r_for(double tau) const {
    switch (kind_) {
        case Kind::kFixed:
            return fixed_r_;
        case Kind::kQuadratic:
            return ceil_positive(c_ * tau * tau);
        case Kind::kCertified:
            return trotter_number(f_, tau, eps_);
    }
    return 1;
}

std::string TrotterPolicy::str() const {
    std::ostringstream out;
    switch (kind_) {
        case Kind::kFixed:
            out << "fixed:" << fixed_r_;
            break;
        case Kind::kQuadratic:
            out << "quadratic:" << c_;
            break;
        case Kind::kCertified:
            out << "certified:" << f_ << ":" << eps_;
            break;
    }
    return out.str();
}

void PFPlan::apply(Vector &state) const {
    for (std::uint64_t s = 0; s < r; ++s) {
        for (auto it = step.rbegin(); it != step.rend(); ++it) {
            apply_rotation(*it, state);
        }
    }
}

PFPlan build_pf(const PauliDecomposition &unit, double tau, std::uint64_t r, bool dense) {
    if (r < 1) {
        throw std::invalid_argument("Trotter number must be >= 1");
    }
    if (unit.size() == 0 || std::abs(unit.lambda() - 1.0) > 1e-9) {
        throw std::invalid_argument("product formula expects a decomposition with Pauli weight 1");
    }
    if (dense && unit.n_qubits() > kMaxPfDenseQubits) {
        throw std::invalid_argument("dense product formula limited to " + std::to_string(kMaxPfDenseQubits) +
                                    " qubits");
    }
    PFPlan plan;
    plan.tau = tau;
    plan.r = r;
    std::size_t L = unit.size();
    plan.n_cp_per_sample = 2 * r * L;
    double x = tau / static_cast<double>(r);
    // exp(-i c x P) = exp(i angle P) with angle = -c x.
    for (std::size_t l = 0; l + 1 < L; ++l) {
        plan.step.push_back({unit[l].pauli, -unit[l].coeff * x / 2.0});
    }
    plan.step.push_back({unit[L - 1].pauli, -unit[L - 1].coeff * x});
    for (std::size_t l = L - 1; l-- > 0;) {
        plan.step.push_back({unit[l].pauli, -unit[l].coeff * x / 2.0});
    }
    if (dense) {
        std::size_t dim = std::size_t{1} << unit.n_qubits();
        Matrix s = Matrix::Identity(dim, dim);
        for (const PauliRotation &rot : plan.step) {
            right_multiply_rotation(s, rot);
        }
        plan.dense_unitary = matrix_power(s, r);
    }
    return plan;
}

}  // namespace rfqls
