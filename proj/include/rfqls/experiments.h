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

#ifndef RFQLS_EXPERIMENTS_H
#define RFQLS_EXPERIMENTS_H

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rfqls/estimator.h"
#include "rfqls/linalg.h"
#include "rfqls/pauli.h"
#include "rfqls/rng.h"
#include "rfqls/simulator.h"

namespace rfqls {

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// diag(R) moved into Q.
Matrix haar_unitary(std::size_t dim, RngStream &rng);

struct GeneratedMatrix {
    Matrix a;
    Eigen::VectorXd spectrum;  // the prescribed diagonal, unsorted
    PauliDecomposition decomposition;
    double lambda = 0.0;
    double kappa = 1.0;  // exact condition number of a

    nlohmann::json to_json() const;
};

/// A = U D U^dagger with D holding +-1/kappa and +-1 (random signs) plus
/// entries uniform on [-1, -1/kappa] u [1/kappa, 1].
GeneratedMatrix gen_matrix(unsigned n_qubits, double kappa, std::uint64_t seed);

/// Reads either a Pauli decomposition (list of {pauli, coeff}, or an object
/// with "terms") or a dense matrix {"matrix": [[[re, im], ...], ...]}.
PauliDecomposition load_matrix_json(const nlohmann::json &j);

struct Table1Row {
    double kappa = 0.0;
    double eps_F = 0.0;
    std::uint64_t J = 0;
    std::uint64_t K = 0;
    double y_max = 0.0;
    double z_max = 0.0;
    double t_max = 0.0;
    unsigned trials = 0;
    double max_error = 0.0;  // max over trials and eigenvalues of |1/x - F(x)|
    double seconds = 0.0;
};

/// The twelve (kappa, eps_F) settings, kappa in {10, 100, 1000}, eps_F in {1e-2, ..., 1e-5}.
std::vector<std::pair<double, double>> table1_settings();

/// Grid sizes with eps_T = eps_D = eps_F/2 and k~ = kappa. With trials > 0,
/// builds the series and checks it at the eigenvalues of that many generated
/// 2-qubit matrices of condition number kappa.
Table1Row table1_row(double kappa, double eps_F, unsigned trials, std::uint64_t seed);

/// Log-spaced integers from lo to hi inclusive, `per_decade` points per decade.
std::vector<std::uint64_t> log_spaced_schedule(std::uint64_t lo, std::uint64_t hi, unsigned per_decade);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

struct SweepPolicy {
    std::string label;
    KernelConfig kernel;
};

struct RmseSweepConfig {
    unsigned n_qubits = 2;
    double kappa = 10.0;
    double eps_F = 2e-2;
    NoiseMode noise = NoiseMode::kGaussian;
    unsigned trials = 20;
    std::uint64_t min_samples = 100;
    std::uint64_t max_samples = 1000000;
    unsigned points_per_decade = 10;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::vector<SweepPolicy> policies;

    /// fixed r=5, ceil(0.05 tau^2), ceil(0.1 tau^2) and exact evolution.
    static std::vector<SweepPolicy> default_policies();
    nlohmann::json to_json() const;
};

struct RmseCurve {
    std::string label;
    std::vector<std::uint64_t> n;
    std::vector<double> rmse;

    double at(std::uint64_t samples) const;
};

struct RmseSweepResult {
    GeneratedMatrix matrix;
    Complex truth;
    std::uint64_t J = 0;
    std::uint64_t K = 0;
    std::vector<RmseCurve> curves;

    const RmseCurve &curve(const std::string &label) const;
};

/// RMSE of Z against <0| A^{-1} |0> over independent trials. Trial t uses the
/// same seed for every policy.
RmseSweepResult rmse_sweep(const RmseSweepConfig &config);

struct RteSingleConfig {
    unsigned n_qubits = 2;
    double kappa = 100.0;
    std::uint64_t r = 100;
    std::vector<double> taus{1.0, 20.0, 50.0, 80.0};
    unsigned n_max = 20;
    unsigned trials = 20;
    std::uint64_t min_samples = 10;
    std::uint64_t max_samples = 100000;
    unsigned points_per_decade = 10;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    nlohmann::json to_json() const;
};

struct RteSingleCurve {
    double tau = 0.0;
    double exact = 0.0;       // Re <0| e^{-i A~ tau} |0>
    double log_weight = 0.0;  // r ln(alpha)
    std::vector<std::uint64_t> n;
    std::vector<double> rmse;

    double at(std::uint64_t samples) const;
};

struct RteSingleResult {
    GeneratedMatrix matrix;
    std::vector<RteSingleCurve> curves;
};

/// RMSE of the alpha^r-weighted RTE estimate of Re <0| e^{-i A~ tau} |0>
/// (A~ = A / lambda) with exact overlaps, per tau.
RteSingleResult rte_single(const RteSingleConfig &config);

}  // namespace rfqls

#endif
