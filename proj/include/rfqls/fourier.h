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

#ifndef RFQLS_FOURIER_H
#define RFQLS_FOURIER_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "rfqls/linalg.h"

namespace rfqls {

/// Condition-number bound of A / lambda given the bound kappa_star on A.
double rescale(double kappa_star, double lambda);

struct TruncationParams {
    double kappa_tilde = 1.0;
    double eps_T = 0.0;
    double y_max = 0.0;
    double z_max = 0.0;
    double t_max = 0.0;  // y_max * z_max
};

/// y_max = k sqrt(2 ln(3k/eps_T)), z_max = sqrt(2 ln(3k/eps_T)).
TruncationParams truncation_params(double kappa_tilde, double eps_T);

struct GridSize {
    std::uint64_t J = 0;
    std::uint64_t K = 0;
};

/// Ceiled (J, K) lower bounds; K is ceiled before it enters the J bound.
GridSize fourier_params(double kappa_tilde, double eps_T, double eps_D, const TruncationParams &trunc);

struct QuadratureGrid {
    std::size_t J = 0;
    std::size_t K = 0;
    std::vector<double> gl_nodes;
    std::vector<double> gl_weights;
    std::vector<double> y_nodes;     // y_max (1 + c_j) / 2
    std::vector<double> wy_weights;  // (y_max / 2) * gl_weights
    std::vector<double> z_nodes;     // delta_z (k - (K - 1) / 2)
    std::vector<double> z_amplitudes;  // delta_z z_k exp(-z_k^2 / 2)
    double delta_z = 0.0;
};

/// Largest J*K accepted by build_series.
inline constexpr std::uint64_t kMaxSeriesTerms = std::uint64_t{1} << 31;

/// F(x) = sum_{jk} alpha_jk exp(-i x t_jk) with
/// alpha_jk = (i / sqrt(2 pi)) wy_j delta_z z_k exp(-z_k^2/2), t_jk = y_j z_k,
/// approximating 1/x on [-1, -1/k] u [1/k, 1].
class FourierSeries {
   public:
    /// Full construction: k~ = lambda kappa_star, (J, K) from fourier_params.
    /// Throws std::length_error when J*K exceeds max_terms.
    static FourierSeries build(double kappa_star, double lambda, double eps_T, double eps_D,
                               std::uint64_t max_terms = kMaxSeriesTerms);

    /// Series on an explicitly sized grid (used for toy grids).
    FourierSeries(double lambda, const TruncationParams &trunc, double eps_D, std::size_t J, std::size_t K);

    const QuadratureGrid &grid() const {
        return grid_;
    }
    const TruncationParams &trunc() const {
        return trunc_;
    }
    std::size_t J() const {
        return grid_.J;
    }
    std::size_t K() const {
        return grid_.K;
    }
    double lambda() const {
        return lambda_;
    }
    double kappa_tilde() const {
        return trunc_.kappa_tilde;
    }
    double eps_T() const {
        return trunc_.eps_T;
    }
    double eps_D() const {
        return eps_D_;
    }
    double t_max() const {
        return trunc_.t_max;
    }
    double N_y() const {
        return n_y_;
    }
    double N_z() const {
        return n_z_;
    }
    /// Smallest |t_jk| over terms with z_k != 0.
    double t_min_abs() const {
        return t_min_abs_;
    }

    Complex alpha(std::size_t j, std::size_t k) const;
    double time(std::size_t j, std::size_t k) const {
        return grid_.y_nodes[j] * grid_.z_nodes[k];
    }

    /// F(x) using the pairing of z_k with -z_k; the series is real and odd.
    double evaluate(double x) const;
    /// F(x) as the plain complex sum over all J*K terms.
    Complex evaluate_direct(double x) const;

    /// max over the given points x of |1/x - F(x)|.
    double max_inverse_error(const std::vector<double> &points) const;

    nlohmann::json to_json(bool include_arrays) const;

   private:
    double lambda_;
    TruncationParams trunc_;
    double eps_D_;
    QuadratureGrid grid_;
    double n_y_ = 0.0;
    double n_z_ = 0.0;
    double t_min_abs_ = 0.0;
};

struct Normalization {
    double N_y = 0.0;
    double N_z = 0.0;
};

/// Direct sums N_y = sum |wy_j| / sqrt(2 pi), N_z = sum |delta_z z_k e^{-z_k^2/2}|.
/// Throws std::logic_error if N_y disagrees with y_max / sqrt(2 pi) beyond 1e-10.
Normalization normalization(const FourierSeries &series);

/// 2 z_max^2 sqrt(2 pi) / (K - 1).
double nz_stated_bound(const FourierSeries &series);
/// z_max sqrt(2 pi).
double nz_riemann_bound(const FourierSeries &series);

}  // namespace rfqls

#endif
