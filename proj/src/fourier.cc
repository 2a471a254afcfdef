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

#include "rfqls/fourier.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rfqls/gauss_legendre.h"

namespace rfqls {

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

void require_positive(double v, const char *name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

std::uint64_t ceil_to_count(double v) {
    double c = std::ceil(v);
    if (!(c < 9.0e18)) {
        throw std::overflow_error("grid size overflows 64 bits");
    }
    return static_cast<std::uint64_t>(std::max(c, 2.0));
}

}  // namespace

double rescale(double kappa_star, double lambda) {
    if (!(kappa_star >= 1.0) || !(lambda >= 1.0)) {
        throw std::invalid_argument("rescale: kappa_star and lambda must both be >= 1");
    }
    return lambda * kappa_star;
}

TruncationParams truncation_params(double kappa_tilde, double eps_T) {
    if (!(kappa_tilde >= 1.0)) {
        throw std::invalid_argument("kappa_tilde must be >= 1");
    }
    require_positive(eps_T, "eps_T");
    if (eps_T >= 3.0 * kappa_tilde) {
        throw std::invalid_argument("eps_T must be below 3 * kappa_tilde");
    }
    double log_term = std::log(3.0 * kappa_tilde / eps_T);
    TruncationParams p;
    p.kappa_tilde = kappa_tilde;
    p.eps_T = eps_T;
    p.z_max = std::sqrt(2.0 * log_term);
    p.y_max = kappa_tilde * p.z_max;
    p.t_max = 2.0 * kappa_tilde * log_term;
    return p;
}

GridSize fourier_params(double kappa_tilde, double eps_T, double eps_D, const TruncationParams &trunc) {
    require_positive(eps_D, "eps_D");
    require_positive(trunc.z_max, "z_max");
    double log_term = std::log(3.0 * kappa_tilde / eps_T);
    double z = trunc.z_max;
    double k_real = 1.0 + (std::log(2.0) + z * z / 2.0 + 2.0 * kappa_tilde * log_term + std::log(2.0 / eps_D) +
                           std::log(1.0 + 2.0 / (z * kSqrt2Pi))) /
                              std::numbers::pi;
    GridSize g;
    g.K = ceil_to_count(k_real);
    double kd = static_cast<double>(g.K);
    double j_real = (std::log(kd / (kd - 1.0)) + std::log(32.0 * trunc.y_max * z * z / (eps_D * kSqrt2Pi)) +
                     3.0 * kappa_tilde * log_term / (2.0 * std::numbers::sqrt2)) /
                    std::log(2.0);
    g.J = ceil_to_count(j_real);
    return g;
}

FourierSeries FourierSeries::build(double kappa_star, double lambda, double eps_T, double eps_D,
                                   std::uint64_t max_terms) {
    double kappa_tilde = rescale(kappa_star, lambda);
    TruncationParams trunc = truncation_params(kappa_tilde, eps_T);
    GridSize g = fourier_params(kappa_tilde, eps_T, eps_D, trunc);
    if (g.J > max_terms / g.K) {
        throw std::length_error("series needs J*K = " + std::to_string(g.J) + "*" + std::to_string(g.K) +
                                " terms, above the limit " + std::to_string(max_terms) +
                                "; relax eps_T/eps_D or raise the limit");
    }
    if (g.J > kMaxGaussLegendreDegree) {
        throw std::length_error("series needs J = " + std::to_string(g.J) + " quadrature nodes, above " +
                                std::to_string(kMaxGaussLegendreDegree));
    }
    return FourierSeries(lambda, trunc, eps_D, g.J, g.K);
}

FourierSeries::FourierSeries(double lambda, const TruncationParams &trunc, double eps_D, std::size_t J,
                             std::size_t K)
    : lambda_(lambda), trunc_(trunc), eps_D_(eps_D) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("lambda must be positive");
    }
    if (J < 1 || K < 2) {
        throw std::invalid_argument("grid needs J >= 1 and K >= 2");
    }
    require_positive(trunc.y_max, "y_max");
    require_positive(trunc.z_max, "z_max");

    GaussLegendreRule rule = gauss_legendre(J);
    grid_.J = J;
    grid_.K = K;
    grid_.gl_nodes = std::move(rule.nodes);
    grid_.gl_weights = std::move(rule.weights);
    grid_.y_nodes.resize(J);
    grid_.wy_weights.resize(J);
    double half = trunc.y_max / 2.0;
    for (std::size_t j = 0; j < J; ++j) {
        grid_.y_nodes[j] = half * (1.0 + grid_.gl_nodes[j]);
        grid_.wy_weights[j] = half * grid_.gl_weights[j];
    }
    grid_.delta_z = 2.0 * trunc.z_max / static_cast<double>(K - 1);
    grid_.z_nodes.resize(K);
    grid_.z_amplitudes.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        // Exactly antisymmetric: z_{K-1-k} = -z_k bit for bit.
        double offset = (2.0 * static_cast<double>(k) - static_cast<double>(K - 1)) / 2.0;
        double z = grid_.delta_z * offset;
        grid_.z_nodes[k] = z;
        grid_.z_amplitudes[k] = grid_.delta_z * z * std::exp(-z * z / 2.0);
    }

    Normalization n = normalization(*this);
    n_y_ = n.N_y;
    n_z_ = n.N_z;

    double y_min = grid_.y_nodes.front();
    double z_min = std::numeric_limits<double>::infinity();
    for (double z : grid_.z_nodes) {
        if (z != 0.0) {
            z_min = std::min(z_min, std::abs(z));
        }
    }
    t_min_abs_ = y_min * z_min;
}

Complex FourierSeries::alpha(std::size_t j, std::size_t k) const {
    return kI * (grid_.wy_weights[j] * grid_.z_amplitudes[k] / kSqrt2Pi);
}

double FourierSeries::evaluate(double x) const {
    // alpha_{j,k} e^{-ixt} + alpha_{j,-k} e^{ixt} = (2 / sqrt(2 pi)) wy_j a_k sin(x y_j z_k)
    std::size_t first_positive = grid_.K / 2 + (grid_.K % 2);
    double total = 0.0;
    for (std::size_t j = 0; j < grid_.J; ++j) {
        double xy = x * grid_.y_nodes[j];
        double inner = 0.0;
        for (std::size_t k = first_positive; k < grid_.K; ++k) {
            inner += grid_.z_amplitudes[k] * std::sin(xy * grid_.z_nodes[k]);
        }
        total += grid_.wy_weights[j] * inner;
    }
    return 2.0 * total / kSqrt2Pi;
}

Complex FourierSeries::evaluate_direct(double x) const {
    Complex total = 0.0;
    for (std::size_t j = 0; j < grid_.J; ++j) {
        for (std::size_t k = 0; k < grid_.K; ++k) {
            total += alpha(j, k) * std::polar(1.0, -x * time(j, k));
        }
    }
    return total;
}

double FourierSeries::max_inverse_error(const std::vector<double> &points) const {
    double worst = 0.0;
    for (double x : points) {
        if (x == 0.0) {
            throw std::invalid_argument("cannot compare against 1/x at x = 0");
        }
        worst = std::max(worst, std::abs(1.0 / x - evaluate(x)));
    }
    return worst;
}

nlohmann::json FourierSeries::to_json(bool include_arrays) const {
    nlohmann::json j = {
        {"kappa_tilde", trunc_.kappa_tilde},
        {"lambda", lambda_},
        {"eps_T", trunc_.eps_T},
        {"eps_D", eps_D_},
        {"J", grid_.J},
        {"K", grid_.K},
        {"y_max", trunc_.y_max},
        {"z_max", trunc_.z_max},
        {"t_max", trunc_.t_max},
        {"t_min_abs", t_min_abs_},
        {"delta_z", grid_.delta_z},
        {"N_y", n_y_},
        {"N_z", n_z_},
    };
    if (include_arrays) {
        j["gl_nodes"] = grid_.gl_nodes;
        j["gl_weights"] = grid_.gl_weights;
        j["y_nodes"] = grid_.y_nodes;
        j["wy_weights"] = grid_.wy_weights;
        j["z_nodes"] = grid_.z_nodes;
    }
    return j;
}

Normalization normalization(const FourierSeries &series) {
    const QuadratureGrid &g = series.grid();
    Normalization n;
    for (double w : g.wy_weights) {
        n.N_y += std::abs(w);
    }
    n.N_y /= kSqrt2Pi;
    for (double a : g.z_amplitudes) {
        n.N_z += std::abs(a);
    }
    double expected = series.trunc().y_max / kSqrt2Pi;
    if (std::abs(n.N_y - expected) > 1e-10 * expected) {
        throw std::logic_error("quadrature weights do not sum to y_max");
    }
    return n;
}

double nz_stated_bound(const FourierSeries &series) {
    double z = series.trunc().z_max;
    return 2.0 * z * z * kSqrt2Pi / static_cast<double>(series.K() - 1);
}

double nz_riemann_bound(const FourierSeries &series) {
    return series.trunc().z_max * kSqrt2Pi;
}

}  // namespace rfqls
