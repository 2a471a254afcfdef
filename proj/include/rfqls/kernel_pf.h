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

#ifndef RFQLS_KERNEL_PF_H
#define RFQLS_KERNEL_PF_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfqls/linalg.h"
#include "rfqls/pauli.h"

namespace rfqls {

/// r = max(1, ceil(sqrt(f |tau|^3 / eps_pf))).
std::uint64_t trotter_number(double f, double tau, double eps_pf);

/// How the Trotter number of a sampled time is chosen.
class TrotterPolicy {
   public:
    enum class Kind { kFixed, kQuadratic, kCertified };

    static TrotterPolicy fixed(std::uint64_t r);
    /// r = max(1, ceil(c tau^2)).
    static TrotterPolicy quadratic(double c);
    /// r from trotter_number(f, tau, eps_pf).
    static TrotterPolicy certified(double f, double eps_pf);
    /// Parses "fixed:5", "quadratic:0.1" or "certified:<f>:<eps>".
    static TrotterPolicy parse(const std::string &text);

    Kind kind() const {
        return kind_;
    }
    std::uint64_t r_for(double tau) const;
    std::string str() const;

   private:
    Kind kind_ = Kind::kFixed;
    std::uint64_t fixed_r_ = 1;
    double c_ = 0.0;
    double f_ = 0.0;
    double eps_ = 1.0;
};

/// Second-order product formula for exp(-i A~ tau) split into r steps.
/// One step is the rotation sequence applied right to left in matrix order:
/// S(x) = prod_{l<L-1} e^{-i c_l x P_l / 2} e^{-i c_{L-1} x P_{L-1}} prod_{l<L-1, reversed} e^{-i c_l x P_l / 2}.
struct PFPlan {
    double tau = 0.0;
    std::uint64_t r = 1;
    /// Rotations of one step in matrix-product order (leftmost first); 2L-1
    /// entries because the middle pair merges into one full-angle rotation.
    std::vector<PauliRotation> step;
    /// 2 r L, the controlled-rotation count charged per sample.
    std::uint64_t n_cp_per_sample = 0;
    std::optional<Matrix> dense_unitary;

    /// state <- S_r(tau) state
    void apply(Vector &state) const;
};

inline constexpr unsigned kMaxPfDenseQubits = 10;

/// `unit` must have Pauli weight 1. With `dense` set, dense_unitary holds
/// S(tau/r)^r (n_qubits <= kMaxPfDenseQubits).
PFPlan build_pf(const PauliDecomposition &unit, double tau, std::uint64_t r, bool dense = true);

}  // namespace rfqls

#endif
