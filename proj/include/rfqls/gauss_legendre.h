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

#ifndef RFQLS_GAUSS_LEGENDRE_H
#define RFQLS_GAUSS_LEGENDRE_H

#include <cstddef>
#include <utility>
#include <vector>

namespace rfqls {

/// Nodes in ascending order with the matching positive weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline constexpr std::size_t kMaxGaussLegendreDegree = 1000000;
/// Above this degree the interior nodes come from the asymptotic expansion.
inline constexpr std::size_t kAsymptoticGaussLegendreThreshold = 10000;

/// Degree-n Gauss-Legendre rule, 1 <= n <= kMaxGaussLegendreDegree.
GaussLegendreRule gauss_legendre(std::size_t n);

/// Newton iteration on the three-term recurrence for every node. O(n^2).
GaussLegendreRule gauss_legendre_newton(std::size_t n);

/// Newton iteration on the Stieltjes asymptotic expansion of P_n(cos theta),
/// with recurrence-based Newton for the nodes near +-1 where the expansion
/// has not converged. O(n) for large n.
GaussLegendreRule gauss_legendre_asymptotic(std::size_t n);

/// (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(std::size_t n, double x);

}  // namespace rfqls

#endif
