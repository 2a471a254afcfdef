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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "rfqls/fourier.h"
#include "rfqls/parallel.h"

namespace rfqls {

Matrix haar_unitary(std::size_t dim, RngStream &rng) {
    Matrix g(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) {
            g(r, c) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t i = 0; i < dim; ++i) {
        Complex d = r(i, i);
        double m = std::abs(d);
        q.col(i) *= m > 0.0 ? d / m : Complex(1.0);
    }
    return q;
}

nlohmann::json GeneratedMatrix::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            row.push_back({a(r, c).real(), a(r, c).imag()});
        }
        rows.push_back(row);
    }
    std::vector<double> spec(spectrum.data(), spectrum.data() + spectrum.size());
    return {{"n_qubits", decomposition.n_qubits()},
            {"kappa", kappa},
            {"lambda", lambda},
            {"spectrum", spec},
            {"matrix", rows},
            {"terms", decomposition.to_json()}};
}

GeneratedMatrix gen_matrix(unsigned n_qubits, double kappa, std::uint64_t seed) {
    if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("kappa must be >= 1");
    }
    if (n_qubits < 1 || n_qubits > kMaxSimulatorQubits) {
        throw std::invalid_argument("gen_matrix supports 1 to " + std::to_string(kMaxSimulatorQubits) + " qubits");
    }
    std::size_t dim = std::size_t{1} << n_qubits;
    RngStream rng(seed, 0, StreamTag::kMatrix);
    auto sign = [&]() { return rng.uniform() < 0.5 ? -1.0 : 1.0; };
    GeneratedMatrix g;
    g.spectrum.resize(static_cast<Eigen::Index>(dim));
    g.spectrum(0) = sign() / kappa;
    g.spectrum(1) = sign();
    for (std::size_t i = 2; i < dim; ++i) {
        double mag = 1.0 / kappa + (1.0 - 1.0 / kappa) * rng.uniform();
        g.spectrum(static_cast<Eigen::Index>(i)) = sign() * mag;
    }
    Matrix u = haar_unitary(dim, rng);
    g.a = u * g.spectrum.cast<Complex>().asDiagonal() * u.adjoint();
    g.a = (g.a + g.a.adjoint()) / 2.0;
    g.decomposition = pauli_decompose(g.a);
    g.lambda = g.decomposition.lambda();
    Eigen::VectorXd s = g.spectrum.cwiseAbs();
    g.kappa = s.maxCoeff() / s.minCoeff();
    return g;
}

PauliDecomposition load_matrix_json(const nlohmann::json &j) {
    if (j.is_object() && j.contains("matrix")) {
        const auto &rows = j.at("matrix");
        std::size_t n = rows.size();
        Matrix m(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            if (rows[r].size() != n) {
                throw std::invalid_argument("matrix must be square");
            }
            for (std::size_t c = 0; c < n; ++c) {
                const auto &e = rows[r][c];
                m(r, c) = e.is_array() ? Complex(e.at(0).get<double>(), e.at(1).get<double>())
                                       : Complex(e.get<double>(), 0.0);
            }
        }
        return pauli_decompose(m);
    }
    return PauliDecomposition::from_json(j);
}

std::vector<std::pair<double, double>> table1_settings() {
    std::vector<std::pair<double, double>> out;
    for (double kappa : {10.0, 100.0, 1000.0}) {
        for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
            out.emplace_back(kappa, eps);
        }
    }
    return out;
}

Table1Row table1_row(double kappa, double eps_F, unsigned trials, std::uint64_t seed) {
    auto start = std::chrono::steady_clock::now();
    Table1Row row;
    row.kappa = kappa;
    row.eps_F = eps_F;
    TruncationParams trunc = truncation_params(kappa, eps_F / 2.0);
    GridSize g = fourier_params(kappa, eps_F / 2.0, eps_F / 2.0, trunc);
    row.J = g.J;
    row.K = g.K;
    row.y_max = trunc.y_max;
    row.z_max = trunc.z_max;
    row.t_max = trunc.t_max;
    if (trials > 0) {
        FourierSeries series = FourierSeries::build(kappa, 1.0, eps_F / 2.0, eps_F / 2.0);
        for (unsigned t = 0; t < trials; ++t) {
            GeneratedMatrix m = gen_matrix(2, kappa, trial_seed(seed, t));
            HermitianSpectrum spec(m.a);
            std::vector<double> eig(spec.eigenvalues().data(),
                                    spec.eigenvalues().data() + spec.eigenvalues().size());
            row.max_error = std::max(row.max_error, series.max_inverse_error(eig));
        }
        row.trials = trials;
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::vector<std::uint64_t> log_spaced_schedule(std::uint64_t lo, std::uint64_t hi, unsigned per_decade) {
    if (lo < 1 || hi < lo || per_decade < 1) {
        throw std::invalid_argument("schedule needs 1 <= lo <= hi and per_decade >= 1");
    }
    std::vector<std::uint64_t> out;
    double a = std::log10(static_cast<double>(lo));
    double b = std::log10(static_cast<double>(hi));
    auto steps = static_cast<long>(std::floor((b - a) * per_decade + 1e-9));
    for (long i = 0; i <= steps; ++i) {
        auto v = static_cast<std::uint64_t>(std::llround(std::pow(10.0, a + static_cast<double>(i) / per_decade)));
        out.push_back(std::clamp(v, lo, hi));
    }
    out.push_back(hi);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("slope needs two or more matching points");
    }
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]);
        double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<SweepPolicy> RmseSweepConfig::default_policies() {
    std::vector<SweepPolicy> out;
    KernelConfig fixed;
    fixed.kind = KernelKind::kProductFormula;
    fixed.pf_policy = TrotterPolicy::fixed(5);
    out.push_back({"pf_fixed_5", fixed});
    KernelConfig q05 = fixed;
    q05.pf_policy = TrotterPolicy::quadratic(0.05);
    out.push_back({"pf_quadratic_0.05", q05});
    KernelConfig q10 = fixed;
    q10.pf_policy = TrotterPolicy::quadratic(0.1);
    out.push_back({"pf_quadratic_0.1", q10});
    KernelConfig exact;
    exact.kind = KernelKind::kExact;
    out.push_back({"exact", exact});
    return out;
}

nlohmann::json RmseSweepConfig::to_json() const {
    nlohmann::json pols = nlohmann::json::array();
    for (const SweepPolicy &p : policies) {
        pols.push_back({{"label", p.label}, {"kernel", p.kernel.str()}});
    }
    return {{"n_qubits", n_qubits},       {"kappa", kappa},
            {"eps_F", eps_F},             {"noise", to_string(noise)},
            {"trials", trials},           {"min_samples", min_samples},
            {"max_samples", max_samples}, {"points_per_decade", points_per_decade},
            {"seed", seed},               {"threads", threads},
            {"policies", pols}};
}

namespace {

double value_at(const std::vector<std::uint64_t> &n, const std::vector<double> &v, std::uint64_t samples) {
    auto it = std::find(n.begin(), n.end(), samples);
    if (it == n.end()) {
        throw std::out_of_range("sample count " + std::to_string(samples) + " is not on the schedule");
    }
    return v[static_cast<std::size_t>(it - n.begin())];
}

}  // namespace

double RmseCurve::at(std::uint64_t samples) const {
    return value_at(n, rmse, samples);
}

double RteSingleCurve::at(std::uint64_t samples) const {
    return value_at(n, rmse, samples);
}

const RmseCurve &RmseSweepResult::curve(const std::string &label) const {
    for (const RmseCurve &c : curves) {
        if (c.label == label) {
            return c;
        }
    }
    throw std::out_of_range("no curve labelled " + label);
}

RmseSweepResult rmse_sweep(const RmseSweepConfig &config) {
    if (config.trials < 1) {
        throw std::invalid_argument("need at least one trial");
    }
    RmseSweepResult result;
    result.matrix = gen_matrix(config.n_qubits, config.kappa, config.seed);
    const GeneratedMatrix &m = result.matrix;
    Problem problem{m.decomposition, StateVector::basis(config.n_qubits, 0), StateVector::basis(config.n_qubits, 0),
                    m.kappa};
    FourierSeries series = FourierSeries::build(m.kappa, m.lambda, config.eps_F / 2.0, config.eps_F / 2.0);
    result.J = series.J();
    result.K = series.K();
    result.truth = HermitianSpectrum(m.a).inverse()(0, 0);
    std::vector<std::uint64_t> schedule =
        log_spaced_schedule(config.min_samples, config.max_samples, config.points_per_decade);
    std::vector<SweepPolicy> policies =
        config.policies.empty() ? RmseSweepConfig::default_policies() : config.policies;
    for (const SweepPolicy &policy : policies) {
        KernelEvaluator evaluator(problem, series, policy.kernel, config.threads);
        std::vector<double> sq(schedule.size(), 0.0);
        SolveOptions options;
        options.threads = config.threads;
        options.checkpoints = schedule;
        for (unsigned t = 0; t < config.trials; ++t) {
            SolveReport rep = run_solver(problem, series, policy.kernel, config.max_samples, config.noise,
                                         trial_seed(config.seed, t), options, &evaluator);
            for (std::size_t i = 0; i < schedule.size(); ++i) {
                sq[i] += std::norm(rep.checkpoints[i].second - result.truth);
            }
        }
        RmseCurve curve;
        curve.label = policy.label;
        curve.n = schedule;
        for (double s : sq) {
            curve.rmse.push_back(std::sqrt(s / config.trials));
        }
        result.curves.push_back(std::move(curve));
    }
    return result;
}

nlohmann::json RteSingleConfig::to_json() const {
    return {{"n_qubits", n_qubits},       {"kappa", kappa},     {"r", r},
            {"taus", taus},               {"n_max", n_max},     {"trials", trials},
            {"min_samples", min_samples}, {"max_samples", max_samples},
            {"points_per_decade", points_per_decade},       {"seed", seed},
            {"threads", threads}};
}

RteSingleResult rte_single(const RteSingleConfig &config) {
    if (config.trials < 1 || config.r < 1) {
        throw std::invalid_argument("need at least one trial and one segment");
    }
    RteSingleResult result;
    result.matrix = gen_matrix(config.n_qubits, config.kappa, config.seed);
    PauliDecomposition unit = result.matrix.decomposition.rescaled();
    HermitianSpectrum spectrum(materialize(unit));
    RTESampler sampler(unit);
    Vector zero = StateVector::basis(config.n_qubits, 0).amplitudes();
    std::vector<std::uint64_t> schedule =
        log_spaced_schedule(config.min_samples, config.max_samples, config.points_per_decade);
    for (std::size_t ti = 0; ti < config.taus.size(); ++ti) {
        double tau = config.taus[ti];
        RTESegmentModel model = segment_model(tau, config.r, config.n_max);
        RteSingleCurve curve;
        curve.tau = tau;
        curve.exact = spectrum.evolution_overlap(zero, zero, tau).real();
        curve.log_weight = static_cast<double>(config.r) * std::log(model.alpha);
        double weight = std::exp(curve.log_weight);
        curve.n = schedule;
        std::vector<std::vector<double>> sq(config.trials, std::vector<double>(schedule.size(), 0.0));
        parallel_for(config.trials, resolve_threads(config.threads), [&](std::size_t begin, std::size_t end) {
            for (std::size_t t = begin; t < end; ++t) {
                std::uint64_t seed = trial_seed(config.seed ^ (0x9E3779B97F4A7C15ULL * (ti + 1)), t);
                double sum = 0.0;
                double comp = 0.0;
                std::size_t next = 0;
                for (std::uint64_t s = 0; s < config.max_samples; ++s) {
                    RngStream rng(seed, s, StreamTag::kKernel);
                    double x = weight * sampler.sample_overlap(model, config.r, rng, zero, zero).real();
                    double y = x - comp;
                    double tsum = sum + y;
                    comp = (tsum - sum) - y;
                    sum = tsum;
                    while (next < schedule.size() && schedule[next] == s + 1) {
                        double err = sum / static_cast<double>(s + 1) - curve.exact;
                        sq[t][next] = err * err;
                        ++next;
                    }
                }
            }
        });
        for (std::size_t i = 0; i < schedule.size(); ++i) {
            double total = 0.0;
            for (unsigned t = 0; t < config.trials; ++t) {
                total += sq[t][i];
            }
            curve.rmse.push_back(std::sqrt(total / config.trials));
        }
        result.curves.push_back(std::move(curve));
    }
    return result;
}

}  // namespace rfqls
