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

#include "rfqls/gauss_legendre.h"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace rfqls {

namespace {

constexpr double kPi = std::numbers::pi;

void check_degree(std::size_t n) {
    if (n < 1 || n > kMaxGaussLegendreDegree) {
        throw std::invalid_argument("Gauss-Legendre degree " + std::to_string(n) + " outside [1, " +
                                    std::to_string(kMaxGaussLegendreDegree) + "]");
    }
}

// Initial guess for the k-th largest root (k = 1..n), in theta = arccos(x).
double initial_theta(std::size_t n, std::size_t k) {
    double nd = static_cast<double>(n);
    double theta = kPi * (4.0 * static_cast<double>(k) - 1.0) / (4.0 * nd + 2.0);
    // Tricomi correction of x = cos(theta).
    double x = (1.0 - (nd - 1.0) / (8.0 * nd * nd * nd)) * std::cos(theta);
    return std::acos(x);
}

// Newton in x on the recurrence. Returns (x, weight).
std::pair<double, double> newton_recurrence_root(std::size_t n, double theta0) {
    double x = std::cos(theta0);
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
        auto [p, d] = legendre_with_derivative(n, x);
        double dx = p / d;
        x -= dx;
        dp = d;
        if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) {
            break;
        }
    }
    // One more evaluation at the converged point for the weight.
    dp = legendre_with_derivative(n, x).second;
    return {x, 2.0 / ((1.0 - x * x) * dp * dp)};
}

struct StieltjesEval {
    double p;
    double dp_dtheta;
};

class StieltjesExpansion {
   public:
    explicit StieltjesExpansion(std::size_t n) : n_(static_cast<double>(n)) {
        // C_n = (4/pi) prod_{j=1}^{n} j / (j + 1/2)
        long double c = 4.0L / std::numbers::pi_v<long double>;
        for (std::size_t j = 1; j <= n; ++j) {
            long double jd = static_cast<long double>(j);
            c *= jd / (jd + 0.5L);
        }
        c_ = static_cast<double>(c);
        h_.push_back(1.0);
        for (int m = 1; m < kMaxTerms; ++m) {
            double md = m;
            h_.push_back(h_.back() * (md - 0.5) * (md - 0.5) / (md * (n_ + md + 0.5)));
        }
    }

    // Returns nullopt when the series has not converged at this theta.
    std::optional<StieltjesEval> operator()(double theta) const {
        double s = std::sin(theta);
        double c = std::cos(theta);
        double two_s = 2.0 * s;
        // alpha_m = (n + m + 1/2) theta - (m + 1/2) pi / 2 = alpha_0 + m (theta - pi/2)
        double alpha0 = (n_ + 0.5) * theta - 0.25 * kPi;
        double ca = std::cos(alpha0);
        double sa = std::sin(alpha0);
        double cd = std::cos(theta - 0.5 * kPi);
        double sd = std::sin(theta - 0.5 * kPi);
        double scale = 1.0 / std::sqrt(two_s);  // (2 sin theta)^{-(m + 1/2)} at m = 0
        double p = 0.0;
        double dp = 0.0;
        for (int m = 0; m < kMaxTerms; ++m) {
            double md = m;
            double term = h_[m] * ca * scale;
            p += term;
            dp += h_[m] * (-(n_ + md + 0.5) * sa * scale - (md + 0.5) * ca * scale * 2.0 * c / two_s);
            if (h_[m] * scale * (n_ + md + 1.0) < 1e-17 * (n_ + 1.0) / std::sqrt(two_s)) {
                return StieltjesEval{c_ * p, c_ * dp};
            }
            double ca_next = ca * cd - sa * sd;
            sa = sa * cd + ca * sd;
            ca = ca_next;
            scale /= two_s;
        }
        return std::nullopt;
    }

   private:
    static constexpr int kMaxTerms = 30;
    double n_;
    double c_;
    std::vector<double> h_;
};

GaussLegendreRule mirror_half(std::size_t n, const std::vector<std::pair<double, double>> &upper) {
    // upper[i] is the (i+1)-th largest root; roots are symmetric about 0.
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < upper.size(); ++i) {
        rule.nodes[n - 1 - i] = upper[i].first;
        rule.weights[n - 1 - i] = upper[i].second;
        rule.nodes[i] = -upper[i].first;
        rule.weights[i] = upper[i].second;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

}  // namespace

std::pair<double, double> legendre_with_derivative(std::size_t n, double x) {
    if (n == 0) {
        return {1.0, 0.0};
    }
    double p_prev = 1.0;
    double p = x;
    for (std::size_t k = 2; k <= n; ++k) {
        double kd = static_cast<double>(k);
        double p_next = ((2.0 * kd - 1.0) * x * p - (kd - 1.0) * p_prev) / kd;
        p_prev = p;
        p = p_next;
    }
    double nd = static_cast<double>(n);
    double dp;
    if (std::abs(std::abs(x) - 1.0) < 1e-300) {
        // P_n'(+-1) = (+-1)^{n-1} n (n + 1) / 2
        dp = (x > 0 || n % 2 == 1 ? 1.0 : -1.0) * nd * (nd + 1.0) / 2.0;
    } else {
        dp = nd * (x * p - p_prev) / (x * x - 1.0);
    }
    return {p, dp};
}

GaussLegendreRule gauss_legendre_newton(std::size_t n) {
    check_degree(n);
    std::vector<std::pair<double, double>> upper;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        upper.push_back(newton_recurrence_root(n, initial_theta(n, k)));
    }
    GaussLegendreRule rule = mirror_half(n, upper);
    if (n % 2 == 1) {
        double dp = legendre_with_derivative(n, 0.0).second;
        rule.weights[n / 2] = 2.0 / (dp * dp);
    }
    return rule;
}

GaussLegendreRule gauss_legendre_asymptotic(std::size_t n) {
    check_degree(n);
    StieltjesExpansion expansion(n);
    std::vector<std::pair<double, double>> upper;
    upper.reserve(n / 2);
    for (std::size_t k = 1; k <= n / 2; ++k) {
        double theta = initial_theta(n, k);
        bool converged = true;
        StieltjesEval ev{};
        for (int iter = 0; iter < 20; ++iter) {
            auto e = expansion(theta);
            if (!e) {
                converged = false;
                break;
            }
            ev = *e;
            double step = ev.p / ev.dp_dtheta;
            theta -= step;
            if (std::abs(step) <= 1e-16 * theta) {
                break;
            }
        }
        if (converged) {
            auto e = expansion(theta);
            if (e) {
                // w = 2 / ((1 - x^2) P'(x)^2) = 2 / (dP/dtheta)^2
                upper.emplace_back(std::cos(theta), 2.0 / (e->dp_dtheta * e->dp_dtheta));
                continue;
            }
        }
        upper.push_back(newton_recurrence_root(n, initial_theta(n, k)));
    }
    GaussLegendreRule rule = mirror_half(n, upper);
    if (n % 2 == 1) {
        auto e = expansion(kPi / 2);
        double d = e ? e->dp_dtheta : legendre_with_derivative(n, 0.0).second;
        rule.weights[n / 2] = 2.0 / (d * d);
    }
    return rule;
}

GaussLegendreRule gauss_legendre(std::size_t n) {
    if (n > kAsymptoticGaussLegendreThreshold) {
        return gauss_legendre_asymptotic(n);
    }
    return gauss_legendre_newton(n);
}

}  // namespace rfqls
