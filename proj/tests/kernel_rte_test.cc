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

#include "rfqls/kernel_rte.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

namespace rfqls {
namespace {

// sum_{n even <= n_max} ((-i t)^n / n!) A^n (I - i t/(n+1) A), built from dense powers.
Matrix finite_lcu_oracle(const Matrix &a, double t, unsigned n_max) {
    std::size_t dim = a.rows();
    Matrix id = Matrix::Identity(dim, dim);
    Matrix total = Matrix::Zero(dim, dim);
    Matrix power = id;
    Complex coeff = 1.0;
    for (unsigned n = 0; n <= n_max; ++n) {
        if (n > 0) {
            power = power * a;
            coeff *= Complex(0.0, -t) / static_cast<double>(n);
        }
        if (n % 2 == 0) {
            total += coeff * power * (id - kI * (t / (n + 1.0)) * a);
        }
    }
    return total;
}

// Calls fn(order_index, terms, probability) for every outcome of one segment.
template <typename Fn>
void for_each_segment_outcome(const RTESegmentModel &model, const PauliDecomposition &unit, Fn fn) {
    for (std::size_t oi = 0; oi < model.orders.size(); ++oi) {
        std::size_t len = model.orders[oi] + 1;
        std::vector<std::size_t> terms(len, 0);
        while (true) {
            double p = model.d[oi] / model.alpha;
            for (std::size_t t : terms) {
                p *= std::abs(unit[t].coeff);
            }
            fn(oi, terms, p);
            std::size_t pos = 0;
            while (pos < len && ++terms[pos] == unit.size()) {
                terms[pos++] = 0;
            }
            if (pos == len) {
                break;
            }
        }
    }
}

PauliDecomposition three_term_qubit() {
    return PauliDecomposition(
               {{0.5, PauliString::parse("X")}, {-0.3, PauliString::parse("Y")}, {0.2, PauliString::parse("Z")}})
        .rescaled();
}

TEST(SegmentModel, ZeroTime) {
    RTESegmentModel m = segment_model(0.0, 5, 6);
    EXPECT_EQ(m.alpha, 1.0);
    EXPECT_EQ(m.theta[0], 0.0);
    EXPECT_EQ(m.d[0], 1.0);
    for (std::size_t i = 1; i < m.d.size(); ++i) {
        EXPECT_EQ(m.d[i], 0.0);
    }
    RTESampler sampler(three_term_qubit());
    RngStream rng(1, 0);
    RTEUnitary u = sampler.sample(m, 5, rng);
    EXPECT_LT(max_abs(u.to_matrix(1) - Matrix::Identity(2, 2)), 1e-15);
    EXPECT_EQ(u.weight(), 1.0);
}

TEST(SegmentModel, UnitRatioClosedForm) {
    RTESegmentModel m = segment_model(3.0, 3, 0);
    ASSERT_EQ(m.orders.size(), 1u);
    EXPECT_NEAR(m.theta[0], std::numbers::pi / 4.0, 1e-15);
    EXPECT_NEAR(m.d[0], std::sqrt(2.0), 1e-15);
}

TEST(SegmentModel, ParityAndClamp) {
    EXPECT_EQ(segment_model(1.0, 1, 5).n_max, 6u);
    RTESegmentModel big = segment_model(1.0, 1, 400);
    EXPECT_TRUE(big.clamped);
    EXPECT_EQ(big.n_max, kMaxRteOrder);
    EXPECT_FALSE(segment_model(1.0, 1, 150).clamped);
    EXPECT_THROW(segment_model(1.0, 0, 2), std::invalid_argument);
}

TEST(SegmentModel, WeightBound) {
    RngStream rng(4, 0);
    for (int trial = 0; trial < 200; ++trial) {
        double tau = 30.0 * (rng.uniform() - 0.5);
        auto r = static_cast<std::uint64_t>(std::ceil(std::abs(tau))) + rng.below(50);
        r = std::max<std::uint64_t>(r, 1);
        RTESegmentModel m = segment_model(tau, r, 2 * static_cast<unsigned>(rng.below(20)));
        EXPECT_GE(m.alpha, 1.0);
        EXPECT_LE(r * std::log(m.alpha), tau * tau / r + 1e-12);
        for (double th : m.theta) {
            EXPECT_GE(th, 0.0);
            EXPECT_LT(th, std::numbers::pi / 2.0);
        }
    }
}

TEST(RteSampler, SegmentPhaseMatchesDenseTerm) {
    PauliDecomposition unit = three_term_qubit();
    RTESampler sampler(unit);
    RngStream rng(5, 0);
    for (double t : {0.7, -0.4}) {
        RTESegmentModel m = segment_model(t, 1, 6);
        for (int trial = 0; trial < 50; ++trial) {
            std::size_t oi = rng.below(m.orders.size());
            std::vector<std::size_t> terms(m.orders[oi] + 1);
            for (std::size_t &x : terms) {
                x = rng.below(unit.size());
            }
            RTESegment seg = sampler.segment(m, oi, terms);
            Matrix expected = Matrix::Identity(2, 2) * ((m.orders[oi] / 2) % 2 == 0 ? 1.0 : -1.0);
            for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
                double s = unit[terms[i]].coeff < 0 ? -1.0 : 1.0;
                expected = expected * (s * unit[terms[i]].pauli.to_matrix());
            }
            const PauliTerm &last = unit[terms.back()];
            double x = t / (m.orders[oi] + 1.0);
            double s = last.coeff < 0 ? -1.0 : 1.0;
            expected = expected * (Matrix::Identity(2, 2) - kI * x * s * last.pauli.to_matrix()) /
                       std::sqrt(1.0 + x * x);
            Matrix got = seg.phase * seg.prefix.to_matrix() * seg.rotation.to_matrix();
            EXPECT_LT(max_abs(got - expected), 1e-14);
        }
    }
}

TEST(RteSampler, ExhaustiveSingleSegment) {
    PauliDecomposition unit({{0.6, PauliString::parse("X")}, {-0.4, PauliString::parse("Z")}});
    RTESampler sampler(unit);
    RTESegmentModel m = segment_model(0.9, 1, 2);
    Matrix sum = Matrix::Zero(2, 2);
    for_each_segment_outcome(m, unit, [&](std::size_t oi, const std::vector<std::size_t> &terms, double p) {
        RTEUnitary u;
        u.segments.push_back(sampler.segment(m, oi, terms));
        u.phase = u.segments[0].phase;
        sum += p * u.phase * m.alpha * u.to_matrix(1);
    });
    EXPECT_LT(max_abs(sum - finite_lcu_oracle(materialize(unit), 0.9, 2)), 1e-14);
}

TEST(RteSampler, ExhaustiveTwoSegments) {
    PauliDecomposition unit = three_term_qubit();
    RTESampler sampler(unit);
    double tau = -1.3;
    RTESegmentModel m = segment_model(tau, 2, 4);
    std::vector<std::pair<RTESegment, double>> outcomes;
    for_each_segment_outcome(m, unit, [&](std::size_t oi, const std::vector<std::size_t> &terms, double p) {
        outcomes.emplace_back(sampler.segment(m, oi, terms), p);
    });
    Matrix sum = Matrix::Zero(2, 2);
    double total_p = 0.0;
    for (const auto &[a, pa] : outcomes) {
        for (const auto &[b, pb] : outcomes) {
            RTEUnitary u;
            u.segments = {a, b};
            u.phase = a.phase * b.phase;
            u.log_weight = 2.0 * std::log(m.alpha);
            sum += pa * pb * u.phase * u.weight() * u.to_matrix(1);
            total_p += pa * pb;
        }
    }
    EXPECT_NEAR(total_p, 1.0, 1e-12);
    Matrix one = finite_lcu_oracle(materialize(unit), tau / 2.0, 4);
    EXPECT_LT(max_abs(sum - one * one), 1e-12);
}

TEST(RteSampler, StreamingOverlapMatchesReversedProduct) {
    PauliDecomposition unit = PauliDecomposition({{0.3, PauliString::parse("XZ")},
                                                  {0.5, PauliString::parse("YI")},
                                                  {-0.2, PauliString::parse("ZY")}})
                                  .rescaled();
    RTESampler sampler(unit);
    RTESegmentModel m = segment_model(2.0, 4, 6);
    Vector phi = Vector::Zero(4);
    phi(0) = 1.0;
    Vector psi = Vector::Zero(4);
    psi(2) = 1.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        RngStream a(9, i);
        RngStream b(9, i);
        RTEUnitary u = sampler.sample(m, 4, a);
        std::reverse(u.segments.begin(), u.segments.end());
        Complex expected = u.phase * phi.dot(u.to_matrix(2) * psi);
        Complex got = sampler.sample_overlap(m, 4, b, phi, psi);
        EXPECT_LT(std::abs(got - expected), 1e-14);
        Vector state = psi;
        u.apply(state);
        EXPECT_LT(std::abs(phi.dot(state) * u.phase - expected), 1e-14);
        EXPECT_EQ(u.n_cp(), 4u);
    }
}

TEST(RteSampler, EmpiricalMeanMatchesEvolution) {
    PauliDecomposition unit = PauliDecomposition({{0.45, PauliString::parse("ZI")},
                                                  {0.3, PauliString::parse("XX")},
                                                  {-0.25, PauliString::parse("IY")}})
                                  .rescaled();
    RTESampler sampler(unit);
    const std::uint64_t r = 100;
    RTESegmentModel m = segment_model(1.0, r, 20);
    double weight = std::exp(r * std::log(m.alpha));
    Vector zero = Vector::Zero(4);
    zero(0) = 1.0;
    const int n = 100000;
    Complex sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        RngStream rng(21, static_cast<std::uint64_t>(i));
        Complex v = weight * sampler.sample_overlap(m, r, rng, zero, zero);
        sum += v;
        sq += std::norm(v);
    }
    Complex mean = sum / static_cast<double>(n);
    double se = std::sqrt((sq / n - std::norm(mean)) / n);
    Complex exact = HermitianSpectrum(materialize(unit)).evolution_overlap(zero, zero, 1.0);
    EXPECT_LT(std::abs(mean.real() - exact.real()), 4 * se);
    EXPECT_LT(std::abs(mean.imag() - exact.imag()), 4 * se);
    EXPECT_LE(sq / n, weight * weight * (1 + 1e-12));
}

TEST(BiasBound, ToyClosedForm) {
    double expected = 2.0 * std::exp((4.0 + 2.0 - 0.5) / 4.0) * std::pow(2.0 * std::numbers::e / 16.0, 4);
    EXPECT_NEAR(rte_bias_bound(2.0, 0.5, 4.0, 1.0, 1.0, 4), expected, 1e-14 * expected);
}

TEST(BiasBound, MonotoneInOrderAndSegments) {
    double t = 30.0;
    double r = 40.0;
    double prev = rte_bias_bound(t, 0.1, r, 5.0, 2.0, 2);
    for (unsigned n = 4; n <= 40; n += 2) {
        double cur = rte_bias_bound(t, 0.1, r, 5.0, 2.0, n);
        EXPECT_LT(cur, prev) << n;
        prev = cur;
    }
    double rr = t * t;
    for (int i = 0; i < 6; ++i) {
        EXPECT_LT(rte_bias_bound(t, 0.1, 2 * rr, 5.0, 2.0, 8), rte_bias_bound(t, 0.1, rr, 5.0, 2.0, 8));
        rr *= 2;
    }
    EXPECT_EQ(rte_bias_bound(5580.0, 1e-6, 5580.0, 400.0, 2.0, 2), std::numeric_limits<double>::infinity());
}

TEST(ChooseNmax, Examples) {
    NmaxChoice easy = choose_nmax(100.0, 0.01, 1e4, 10.0, 2.0, 1e-3);
    EXPECT_TRUE(easy.feasible);
    EXPECT_LE(easy.n_max, 20u);
    EXPECT_EQ(easy.n_max % 2, 0u);
    EXPECT_LT(easy.log_bound, std::log(0.5e-3));
    if (easy.n_max > 2) {
        EXPECT_GE(log_rte_bias_bound(100.0, 0.01, 1e4, 10.0, 2.0, easy.n_max - 2), std::log(0.5e-3));
    }

    NmaxChoice hard = choose_nmax(5580.0, 1e-6, 5580.0, 1.0, 1.0, 1e-2);
    EXPECT_FALSE(hard.feasible);
    EXPECT_NEAR(hard.log_prefactor, 5580.0, 0.005 * 5580.0);

    EXPECT_EQ(choose_nmax(10.0, 0.1, 10.0, 1.0, 1.0, 1e300).n_max, 2u);
    EXPECT_THROW(choose_nmax(10.0, 0.1, 9.0, 1.0, 1.0, 1e-2), std::invalid_argument);
}

TEST(RtePolicy, Kinds) {
    EXPECT_EQ(RtePolicy::fixed(100).r_for(80.0), 100u);
    EXPECT_EQ(RtePolicy::quadratic(0.01).r_for(50.0), 50u);
    EXPECT_EQ(RtePolicy::quadratic(1.0).r_for(3.0), 9u);
    EXPECT_EQ(RtePolicy::parse("quadratic:1").r_for(-3.0), 9u);
    EXPECT_THROW(RtePolicy::parse("fixed:"), std::invalid_argument);
}

}  // namespace
}  // namespace rfqls
