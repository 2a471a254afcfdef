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

#ifndef RFQLS_KERNEL_RTE_H
#define RFQLS_KERNEL_RTE_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rfqls/linalg.h"
#include "rfqls/pauli.h"
#include "rfqls/rng.h"
#include "rfqls/sampler.h"

namespace rfqls {

/// Largest truncation order before 1/n! underflows in the per-order weights.
inline constexpr unsigned kMaxRteOrder = 150;

/// One of the r equal segments e^{-i A~ tau / r}, truncated to
///
///   sum_{n even <= n_max} ((-i t)^n / n!) A~^n (I - i t/(n+1) A~),   t = tau / r,
///
/// and rewritten as an LCU whose unitaries are a Pauli product followed by a
/// single Pauli rotation: (I - i x A~) = sum_l p_l sqrt(1+x^2) e^{-i sign(x s_l) theta P_l}.
struct RTESegmentModel {
    double tau_over_r = 0.0;
    unsigned n_max = 0;
    std::vector<unsigned> orders;  // 0, 2, ..., n_max
    std::vector<double> d;         // |t|^n / n! sqrt(1 + (t/(n+1))^2)
    std::vector<double> theta;     // arccos((1 + (t/(n+1))^2)^{-1/2})
    double alpha = 1.0;            // sum of d
    bool clamped = false;          // requested n_max exceeded kMaxRteOrder
    DiscreteDistribution order_distribution;
};

/// Odd n_max rounds up; n_max above kMaxRteOrder is clamped (flagged).
RTESegmentModel segment_model(double tau, std::uint64_t r, unsigned n_max);

struct RTESegment {
    unsigned order = 0;
    PauliString prefix;      // P_l1 ... P_ln up to phase
    PauliRotation rotation;  // applied before the prefix
    Complex phase{1.0, 0.0};
};

/// A sampled product of r segment unitaries, U = U_0 U_1 ... U_{r-1}, each
/// U_s = prefix_s * rotation_s. The LCU signs and Pauli-product phases are
/// kept in `phase`, so that E[phase * weight * U] is the truncated series.
struct RTEUnitary {
    std::vector<RTESegment> segments;
    Complex phase{1.0, 0.0};
    double log_weight = 0.0;  // r ln(alpha)

    double weight() const;
    /// Controlled-rotation count (one per segment).
    std::uint64_t n_cp() const {
        return segments.size();
    }
    /// Product of the segment unitaries without `phase`.
    Matrix to_matrix(unsigned n_qubits) const;
    /// state <- U state (without `phase`).
    void apply(Vector &state) const;
    nlohmann::json to_json() const;
};

/// Draws RTE unitaries for a unit-weight decomposition.
class RTESampler {
   public:
    /// `unit` must have Pauli weight 1 and outlive the sampler.
    explicit RTESampler(const PauliDecomposition &unit);

    const DiscreteDistribution &term_distribution() const {
        return terms_;
    }

    RTEUnitary sample(const RTESegmentModel &model, std::uint64_t r, RngStream &rng) const;

    /// Draws r segments and returns phase * <phi| U |psi> without storing the
    /// segments. Each drawn segment is applied to the state as soon as it is
    /// drawn, so the draws fill the product from the right; the distribution
    /// of U is the same as for sample().
    Complex sample_overlap(const RTESegmentModel &model, std::uint64_t r, RngStream &rng, const Vector &phi,
                           const Vector &psi) const;

    /// The segment for a given truncation order index and the n+1 term
    /// indices (the last one names the rotation).
    RTESegment segment(const RTESegmentModel &model, std::size_t order_index,
                       const std::vector<std::size_t> &terms) const;

   private:
    const PauliDecomposition *unit_;
    DiscreteDistribution terms_;
};

/// ln of (r N_y N_z / 2) e^{(t_max^2 + t_max - t_min)/r} (e t_max / (r n_max))^{n_max}.
double log_rte_bias_bound(double t_max, double t_min_abs, double r, double N_y, double N_z, unsigned n_max);
/// The bound itself; +infinity when it overflows.
double rte_bias_bound(double t_max, double t_min_abs, double r, double N_y, double N_z, unsigned n_max);

struct NmaxChoice {
    bool feasible = false;
    unsigned n_max = 0;
    double log_bound = 0.0;
    /// ln of the n-independent prefactor of the bound.
    double log_prefactor = 0.0;
};

/// Smallest even n_max in [2, kMaxRteOrder] with bias bound < eps / 2.
/// Requires r >= t_max.
NmaxChoice choose_nmax(double t_max, double t_min_abs, double r, double N_y, double N_z, double eps);

/// Segment count of a sampled time: fixed, or max(ceil|tau|, ceil(c tau^2)).
class RtePolicy {
   public:
    static RtePolicy fixed(std::uint64_t r);
    static RtePolicy quadratic(double c);
    /// Parses "fixed:<r>" or "quadratic:<c>".
    static RtePolicy parse(const std::string &text);

    std::uint64_t r_for(double tau) const;
    std::string str() const;

   private:
    bool quadratic_ = false;
    std::uint64_t fixed_r_ = 1;
    double c_ = 0.0;
};

}  // namespace rfqls

#endif
