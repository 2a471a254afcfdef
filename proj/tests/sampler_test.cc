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

#include "rfqls/sampler.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

namespace rfqls {
namespace {

TruncationParams toy_trunc(double y_max, double z_max) {
    TruncationParams t;
    t.kappa_tilde = 2.0;
    t.eps_T = 0.1;
    t.y_max = y_max;
    t.z_max = z_max;
    t.t_max = y_max * z_max;
    return t;
}

TEST(DiscreteDistribution, Normalizes) {
    DiscreteDistribution d({1.0, 3.0, 0.0, 4.0});
    EXPECT_DOUBLE_EQ(d.probability(0), 0.125);
    EXPECT_DOUBLE_EQ(d.probability(1), 0.375);
    EXPECT_DOUBLE_EQ(d.probability(2), 0.0);
    EXPECT_DOUBLE_EQ(d.probability(3), 0.5);
}

TEST(DiscreteDistribution, Errors) {
    EXPECT_THROW(DiscreteDistribution(std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(DiscreteDistribution({0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(DiscreteDistribution({1.0, -1.0}), std::invalid_argument);
    EXPECT_THROW(DiscreteDistribution({1.0, NAN}), std::invalid_argument);
}

TEST(DiscreteDistribution, ZeroWeightsNeverDrawn) {
    DiscreteDistribution d({0.0, 1e-300, 0.0, 1.0, 0.0, 0.3, 0.0});
    RngStream rng(1, 0);
    for (int i = 0; i < 200000; ++i) {
        std::size_t s = d.sample(rng);
        EXPECT_TRUE(s == 1 || s == 3 || s == 5) << s;
    }
}

TEST(DiscreteDistribution, FrequenciesWithinMultinomialBounds) {
    std::vector<double> w{0.1, 2.0, 0.7, 0.0, 3.3, 1.1, 0.05, 0.9};
    DiscreteDistribution d(w);
    const int n = 1000000;
    std::vector<int> counts(w.size(), 0);
    RngStream rng(2, 0);
    for (int i = 0; i < n; ++i) {
        ++counts[d.sample(rng)];
    }
    double chi2 = 0.0;
    int dof = -1;
    for (std::size_t i = 0; i < w.size(); ++i) {
        double p = d.probability(i);
        double sigma = std::sqrt(n * p * (1 - p));
        EXPECT_LE(std::abs(counts[i] - n * p), 4 * sigma + 1e-9) << i;
        if (p > 0) {
            chi2 += (counts[i] - n * p) * (counts[i] - n * p) / (n * p);
            ++dof;
        }
    }
    // 6 degrees of freedom: P(chi2 > 22.46) = 1e-3.
    EXPECT_LT(chi2, 22.46);
}

TEST(FourierSampler, SingleYNode) {
    FourierSeries s(1.0, toy_trunc(1.0, 1.0), 0.1, 1, 4);
    FourierSampler sampler(s);
    ASSERT_EQ(sampler.p_y().size(), 1u);
    EXPECT_EQ(sampler.p_y().probability(0), 1.0);
}

TEST(FourierSampler, SymmetricZDistribution) {
    FourierSeries s = FourierSeries::build(10.0, 1.0, 5e-3, 5e-3);
    FourierSampler sampler(s);
    std::size_t K = s.K();
    for (std::size_t k = 0; k < K; ++k) {
        EXPECT_DOUBLE_EQ(sampler.p_z().probability(k), sampler.p_z().probability(K - 1 - k));
    }
}

TEST(FourierSampler, ToyFiveNodeZDistribution) {
    FourierSeries s(1.0, toy_trunc(1.0, 2.0), 0.1, 3, 5);
    FourierSampler sampler(s);
    // z = -2, -1, 0, 1, 2 with delta_z = 1.
    double a1 = std::exp(-0.5);
    double a2 = 2.0 * std::exp(-2.0);
    double total = 2 * a1 + 2 * a2;
    const double expected[] = {a2 / total, a1 / total, 0.0, a1 / total, a2 / total};
    for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_NEAR(sampler.p_z().probability(k), expected[k], 1e-15);
    }
}

TEST(FourierSampler, ExhaustiveExpectationIsSeriesOverLambda) {
    FourierSeries s(1.7, toy_trunc(3.0, 2.5), 0.1, 4, 5);
    FourierSampler sampler(s);
    for (double x : {-0.9, -0.3, 0.2, 0.55, 1.0}) {
        Complex total = 0.0;
        for (std::size_t j = 0; j < s.J(); ++j) {
            for (std::size_t k = 0; k < s.K(); ++k) {
                FourierSample fs = sampler.outcome(j, k);
                double p = sampler.p_y().probability(j) * sampler.p_z().probability(k);
                total += p * fs.omega * fs.weight * std::polar(1.0, -x * fs.tau);
            }
        }
        Complex expected = s.evaluate_direct(x) / s.lambda();
        EXPECT_LT(std::abs(total - expected), 1e-13) << x;
    }
}

TEST(FourierSampler, TwoNodeGridPhases) {
    FourierSeries s(1.0, toy_trunc(1.0, 1.0), 0.1, 1, 2);
    FourierSampler sampler(s);
    EXPECT_EQ(sampler.outcome(0, 0).omega, -kI);
    EXPECT_EQ(sampler.outcome(0, 1).omega, kI);
    EXPECT_NEAR(sampler.outcome(0, 1).tau, s.grid().y_nodes[0] * 1.0, 1e-15);
}

TEST(FourierSampler, DeterministicPerKey) {
    FourierSeries s = FourierSeries::build(10.0, 1.0, 5e-3, 5e-3);
    FourierSampler sampler(s);
    for (std::uint64_t i = 0; i < 100; ++i) {
        RngStream a(42, i, StreamTag::kFourierTime);
        RngStream b(42, i, StreamTag::kFourierTime);
        FourierSample x = sampler.sample(a);
        FourierSample y = sampler.sample(b);
        EXPECT_EQ(x.j, y.j);
        EXPECT_EQ(x.k, y.k);
        EXPECT_EQ(x.tau, y.tau);
        EXPECT_LE(std::abs(x.tau), s.t_max());
        EXPECT_EQ(std::abs(x.omega), 1.0);
        EXPECT_NE(s.grid().z_nodes[x.k], 0.0);
    }
    std::set<std::pair<std::size_t, std::size_t>> distinct;
    for (std::uint64_t i = 0; i < 100; ++i) {
        RngStream a(42, i, StreamTag::kFourierTime);
        FourierSample x = sampler.sample(a);
        distinct.insert({x.j, x.k});
    }
    EXPECT_GT(distinct.size(), 50u);
}

}  // namespace
}  // namespace rfqls
