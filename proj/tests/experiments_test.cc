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

#include "rfqls/experiments.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

namespace rfqls {
namespace {

TEST(GenMatrix, ConditionNumberAndNorm) {
    for (unsigned n : {1u, 2u, 3u}) {
        for (double kappa : {1.0, 10.0, 100.0}) {
            GeneratedMatrix g = gen_matrix(n, kappa, 7 + n);
            Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(g.a).singularValues();
            EXPECT_NEAR(s.maxCoeff(), 1.0, 1e-12);
            EXPECT_NEAR(s.maxCoeff() / s.minCoeff(), kappa, 1e-10 * kappa);
            EXPECT_NEAR(g.kappa, kappa, 1e-10 * kappa);
            EXPECT_LT(hermiticity_defect(g.a), 1e-15);
            EXPECT_LT(max_abs(materialize(g.decomposition) - g.a), 1e-13);
            // ||A|| <= lambda, and Cauchy-Schwarz over the 4^n coefficients gives lambda <= 2^n ||A||.
            EXPECT_GE(g.lambda, 1.0 - 1e-12);
            EXPECT_LE(g.lambda, std::pow(2.0, n) + 1e-12);
        }
    }
}

TEST(GenMatrix, SeededAndValidated) {
    GeneratedMatrix a = gen_matrix(2, 10.0, 3);
    GeneratedMatrix b = gen_matrix(2, 10.0, 3);
    GeneratedMatrix c = gen_matrix(2, 10.0, 4);
    EXPECT_EQ(max_abs(a.a - b.a), 0.0);
    EXPECT_GT(max_abs(a.a - c.a), 1e-3);
    EXPECT_THROW(gen_matrix(2, 0.5, 1), std::invalid_argument);
    EXPECT_THROW(gen_matrix(0, 2.0, 1), std::invalid_argument);
    EXPECT_THROW(gen_matrix(11, 2.0, 1), std::invalid_argument);
    PauliDecomposition round = load_matrix_json(a.to_json());
    EXPECT_LT(max_abs(materialize(round) - a.a), 1e-12);
}

TEST(HaarUnitary, IsUnitary) {
    RngStream rng(1, 0);
    Matrix u = haar_unitary(8, rng);
    EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(8, 8)), 1e-13);
}

TEST(Table1, GridSizesAndSeriesError) {
    Table1Row row = table1_row(10.0, 1e-2, 3, 1);
    EXPECT_EQ(row.J, 154u);
    EXPECT_EQ(row.K, 62u);
    EXPECT_LE(row.max_error, 1e-2);
    EXPECT_EQ(table1_settings().size(), 12u);
}

TEST(Schedule, LogSpaced) {
    std::vector<std::uint64_t> s = log_spaced_schedule(10, 100000, 1);
    EXPECT_EQ(s, (std::vector<std::uint64_t>{10, 100, 1000, 10000, 100000}));
    std::vector<std::uint64_t> d = log_spaced_schedule(100, 1000, 10);
    EXPECT_EQ(d.front(), 100u);
    EXPECT_EQ(d.back(), 1000u);
    for (std::size_t i = 1; i < d.size(); ++i) {
        EXPECT_GT(d[i], d[i - 1]);
    }
    EXPECT_THROW(log_spaced_schedule(0, 10, 1), std::invalid_argument);
}

TEST(Slope, PowerLaw) {
    std::vector<double> x{1, 10, 100, 1000};
    std::vector<double> y;
    for (double v : x) {
        y.push_back(3.0 * std::pow(v, -0.5));
    }
    EXPECT_NEAR(loglog_slope(x, y), -0.5, 1e-12);
    EXPECT_THROW(loglog_slope({1.0}, {1.0}), std::invalid_argument);
}

TEST(RteSingle, ZeroTimeIsExact) {
    RteSingleConfig c;
    c.taus = {0.0, 1.0};
    c.trials = 4;
    c.max_samples = 1000;
    RteSingleResult res = rte_single(c);
    ASSERT_EQ(res.curves.size(), 2u);
    for (double v : res.curves[0].rmse) {
        EXPECT_LT(v, 1e-12);
    }
    EXPECT_LT(res.curves[1].at(1000), 0.2);
    EXPECT_EQ(res.curves[1].n.front(), 10u);
    EXPECT_THROW(res.curves[1].at(11), std::out_of_range);
}

TEST(RmseSweep, SmallRun) {
    RmseSweepConfig c;
    c.trials = 3;
    c.max_samples = 1000;
    c.eps_F = 0.1;
    c.points_per_decade = 1;
    c.policies = RmseSweepConfig::default_policies();
    RmseSweepResult res = rmse_sweep(c);
    EXPECT_EQ(res.curves.size(), 4u);
    EXPECT_LT(std::abs(res.truth - HermitianSpectrum(res.matrix.a).inverse()(0, 0)), 1e-12);
    for (const RmseCurve &curve : res.curves) {
        EXPECT_EQ(curve.n, (std::vector<std::uint64_t>{100, 1000}));
        EXPECT_GT(curve.at(100), 0.0);
    }
    EXPECT_THROW(res.curve("missing"), std::out_of_range);
    EXPECT_NO_THROW(res.curve("exact"));
}

}  // namespace
}  // namespace rfqls
