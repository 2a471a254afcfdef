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

#include "rfqls/estimator.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rfqls/parallel.h"
#include "rfqls/rng.h"

namespace rfqls {

KernelKind parse_kernel_kind(const std::string &text) {
    if (text == "pf") {
        return KernelKind::kProductFormula;
    }
    if (text == "rte") {
        return KernelKind::kRandomTaylor;
    }
    if (text == "exact") {
        return KernelKind::kExact;
    }
    throw std::invalid_argument("unknown kernel '" + text + "'; expected pf, rte or exact");
}

std::string to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::kProductFormula:
            return "pf";
        case KernelKind::kRandomTaylor:
            return "rte";
        case KernelKind::kExact:
            return "exact";
    }
    return "unknown";
}

double pf_bias_bound(double N_y, double N_z, double lambda, double f, double t_max, double r) {
    if (!(N_y >= 0.0) || !(N_z >= 0.0) || !(lambda > 0.0) || !(f >= 0.0) || !(t_max >= 0.0) || !(r >= 1.0)) {
        throw std::invalid_argument("pf_bias_bound: arguments must be nonnegative, lambda > 0, r >= 1");
    }
    return N_y * N_z * f * t_max * t_max * t_max / (lambda * r * r);
}

namespace {

void check_eps_delta(double eps, double delta) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("eps must be positive");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
}

// Fills N_S from ln(N_S - offset).
void set_sample_count(ResourceEstimate &est, double offset, double log_excess) {
    double log10_excess = log_excess / std::numbers::ln10;
    double value = offset + std::exp(log_excess);
    est.log10_N_S = std::isfinite(value) ? std::log10(std::ceil(value)) : log10_excess;
    if (value > kDeskScaleLimit || !std::isfinite(value)) {
        est.infeasible_scale = true;
        est.N_S = 0;
    } else {
        est.N_S = static_cast<std::uint64_t>(std::ceil(value));
    }
}

double safe_log10(double v) {
    return v > 0.0 ? std::log10(v) : -std::numeric_limits<double>::infinity();
}

}  // namespace

nlohmann::json ResourceEstimate::to_json() const {
    nlohmann::json j = {
        {"kernel", to_string(kernel)},
        {"feasible", feasible},
        {"infeasible_at_desk_scale", infeasible_scale},
        {"log10_N_S", log10_N_S},
        {"N_CP", N_CP},
        {"r", r},
        {"bias_bound", std::isfinite(bias_bound) ? nlohmann::json(bias_bound) : nlohmann::json("inf")},
        {"log10_bias_bound", log10_bias_bound},
        {"inputs", inputs},
    };
    j["N_S"] = infeasible_scale ? nlohmann::json(nullptr) : nlohmann::json(N_S);
    if (kernel == KernelKind::kRandomTaylor) {
        j["n_max"] = n_max;
        j["log10_prefactor"] = log10_prefactor;
    }
    if (!diagnostic.empty()) {
        j["diagnostic"] = diagnostic;
    }
    return j;
}

ResourceEstimate pf_resources(double eps, double delta, double N_y, double N_z, double lambda, double f,
                              double t_max, std::uint64_t L, double r_cap) {
    check_eps_delta(eps, delta);
    if (!(lambda > 0.0) || !(f >= 0.0) || !(t_max >= 0.0) || !(N_y > 0.0) || !(N_z > 0.0) || L < 1) {
        throw std::invalid_argument("pf_resources: invalid series or decomposition parameters");
    }
    ResourceEstimate est;
    est.kernel = KernelKind::kProductFormula;
    est.inputs = {{"eps", eps}, {"delta", delta}, {"N_y", N_y},     {"N_z", N_z},
                  {"lambda", lambda}, {"f", f},  {"t_max", t_max}, {"L", L}};
    double r_real = std::floor(std::sqrt(2.0 * N_y * N_z * f * t_max * t_max * t_max / (lambda * eps))) + 1.0;
    if (r_real > r_cap) {
        est.feasible = false;
        est.diagnostic = "required Trotter number exceeds the cap " + std::to_string(r_cap);
        r_real = r_cap;
    }
    est.r = static_cast<std::uint64_t>(r_real);
    est.N_CP = 2 * est.r * L;
    est.bias_bound = pf_bias_bound(N_y, N_z, lambda, f, t_max, r_real);
    est.log10_bias_bound = safe_log10(est.bias_bound);
    double margin = eps / 2.0 - std::abs(est.bias_bound);
    if (!(margin > 0.0)) {
        est.feasible = false;
        est.infeasible_scale = true;
        est.log10_N_S = std::numeric_limits<double>::infinity();
        return est;
    }
    double log_excess = std::log(std::log(2.0 / delta) * 16.0) + 2.0 * std::log(N_y * N_z / lambda) -
                        2.0 * std::log(margin);
    set_sample_count(est, 2.0, log_excess);
    return est;
}

ResourceEstimate rte_resources(double eps, double delta, double N_y, double N_z, double lambda, double t_max,
                               double t_min_abs, double r) {
    check_eps_delta(eps, delta);
    if (!(lambda > 0.0) || !(t_max > 0.0) || !(N_y > 0.0) || !(N_z > 0.0)) {
        throw std::invalid_argument("rte_resources: invalid series parameters");
    }
    if (!(r >= t_max)) {
        throw std::invalid_argument("RTE resources require r >= t_max");
    }
    ResourceEstimate est;
    est.kernel = KernelKind::kRandomTaylor;
    est.inputs = {{"eps", eps},       {"delta", delta}, {"N_y", N_y},         {"N_z", N_z},
                  {"lambda", lambda}, {"t_max", t_max}, {"t_min_abs", t_min_abs}, {"r", r}};
    est.r = static_cast<std::uint64_t>(std::ceil(r));
    est.N_CP = est.r;
    est.log10_prefactor = 2.0 * t_max * t_max / (r * std::numbers::ln10);

    NmaxChoice choice = choose_nmax(t_max, t_min_abs, r, N_y, N_z, eps);
    est.n_max = choice.n_max;
    est.log10_bias_bound = choice.log_bound / std::numbers::ln10;
    double margin;
    if (choice.feasible) {
        est.bias_bound = std::exp(choice.log_bound);
        margin = eps / 2.0 - est.bias_bound;
    } else {
        est.feasible = false;
        est.bias_bound = std::isfinite(std::exp(choice.log_bound)) ? std::exp(choice.log_bound)
                                                                   : std::numeric_limits<double>::infinity();
        est.diagnostic = "no even n_max <= " + std::to_string(kMaxRteOrder) +
                         " meets the bias condition (log10 bound " + std::to_string(est.log10_bias_bound) +
                         "); N_S shown is the lower bound with zero bias";
        margin = eps / 2.0;
    }
    double log_excess = std::log(std::log(2.0 / delta) * 16.0) + 2.0 * t_max * t_max / r +
                        2.0 * std::log(N_y * N_z / lambda) - 2.0 * std::log(margin);
    set_sample_count(est, 1.0, log_excess);
    return est;
}

KernelConfig KernelConfig::parse(const std::string &text) {
    KernelConfig c;
    if (text == "exact") {
        c.kind = KernelKind::kExact;
        return c;
    }
    if (text.rfind("pf:", 0) == 0) {
        c.kind = KernelKind::kProductFormula;
        c.pf_policy = TrotterPolicy::parse(text.substr(3));
        return c;
    }
    if (text.rfind("rte:", 0) == 0) {
        c.kind = KernelKind::kRandomTaylor;
        std::string rest = text.substr(4);
        auto first = rest.find(':');
        auto second = first == std::string::npos ? std::string::npos : rest.find(':', first + 1);
        if (second != std::string::npos) {
            try {
                c.n_max = static_cast<unsigned>(std::stoul(rest.substr(second + 1)));
            } catch (const std::logic_error &) {
                throw std::invalid_argument("bad n_max in kernel '" + text + "'");
            }
            rest = rest.substr(0, second);
        }
        c.rte_policy = RtePolicy::parse(rest);
        return c;
    }
    throw std::invalid_argument("bad kernel '" + text + "'; expected exact, pf:<policy> or rte:<policy>[:<n_max>]");
}

std::string KernelConfig::str() const {
    switch (kind) {
        case KernelKind::kProductFormula:
            return "pf:" + pf_policy.str();
        case KernelKind::kRandomTaylor:
            return "rte:" + rte_policy.str() + ":" + std::to_string(n_max);
        case KernelKind::kExact:
            return "exact";
    }
    return "unknown";
}

KernelEvaluator::KernelEvaluator(const Problem &problem, const FourierSeries &series, const KernelConfig &config,
                                 unsigned threads)
    : problem_(&problem),
      series_(&series),
      config_(config),
      unit_(problem.a.rescaled()),
      spectrum_(materialize(unit_)) {
    if (problem.phi.dim() != (std::size_t{1} << unit_.n_qubits()) || problem.psi.dim() != problem.phi.dim()) {
        throw std::invalid_argument("state width does not match the matrix");
    }
    if (config_.kind == KernelKind::kRandomTaylor) {
        rte_.emplace(unit_);
        return;
    }
    std::uint64_t terms = static_cast<std::uint64_t>(series.J()) * series.K();
    if (terms > kMaxOverlapTable) {
        return;
    }
    table_.resize(terms);
    table_r_.resize(terms);
    std::size_t K = series.K();
    parallel_for(series.J(), resolve_threads(threads), [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            for (std::size_t k = 0; k < K; ++k) {
                Evaluation e = compute(series.time(j, k), nullptr);
                table_[j * K + k] = e.overlap;
                table_r_[j * K + k] = e.r;
            }
        }
    });
}

KernelEvaluator::Evaluation KernelEvaluator::compute(double tau, RngStream *rng) const {
    const Vector &phi = problem_->phi.amplitudes();
    const Vector &psi = problem_->psi.amplitudes();
    Evaluation e;
    switch (config_.kind) {
        case KernelKind::kExact:
            e.overlap = spectrum_.evolution_overlap(phi, psi, tau);
            e.r = 0;
            break;
        case KernelKind::kProductFormula: {
            std::uint64_t r = config_.pf_policy.r_for(tau);
            e.r = r;
            if (unit_.n_qubits() <= kMaxPfDenseQubits && r > 64) {
                PFPlan plan = build_pf(unit_, tau, r, true);
                e.overlap = phi.dot(*plan.dense_unitary * psi);
            } else {
                PFPlan plan = build_pf(unit_, tau, r, false);
                Vector state = psi;
                plan.apply(state);
                e.overlap = phi.dot(state);
            }
            break;
        }
        case KernelKind::kRandomTaylor: {
            std::uint64_t r = config_.rte_policy.r_for(tau);
            e.r = r;
            RTESegmentModel model = segment_model(tau, r, config_.n_max);
            double log_weight = static_cast<double>(r) * std::log(model.alpha);
            if (log_weight > 700.0) {
                throw std::overflow_error("RTE weight alpha^r = e^" + std::to_string(log_weight) +
                                          " overflows; use more segments");
            }
            e.overlap = rte_->sample_overlap(model, r, *rng, phi, psi);
            e.factor = std::exp(log_weight);
            break;
        }
    }
    return e;
}

KernelEvaluator::Evaluation KernelEvaluator::evaluate(const FourierSample &sample, RngStream &rng) const {
    if (!table_.empty()) {
        std::size_t idx = sample.j * series_->K() + sample.k;
        return Evaluation{table_[idx], Complex(1.0, 0.0), table_r_[idx]};
    }
    return compute(sample.tau, &rng);
}

namespace {

struct NeumaierSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    double value() const {
        return sum + c;
    }
};

constexpr std::size_t kBlock = 1 << 15;

}  // namespace

nlohmann::json SolveReport::to_json() const {
    auto cj = [](Complex z) { return nlohmann::json::array({z.real(), z.imag()}); };
    nlohmann::json j = {
        {"Z", cj(Z)},
        {"N_S", N_S},
        {"abs_error", truth ? nlohmann::json(abs_error) : nlohmann::json(nullptr)},
        {"wall_time_s", wall_time},
        {"master_seed", master_seed},
        {"diagnostics", diagnostics},
    };
    j["truth"] = truth ? cj(*truth) : nlohmann::json(nullptr);
    j["series_target"] = series_target ? cj(*series_target) : nlohmann::json(nullptr);
    nlohmann::json cps = nlohmann::json::array();
    for (const auto &[n, z] : checkpoints) {
        cps.push_back({{"N", n}, {"Z", cj(z)}});
    }
    j["checkpoints"] = cps;
    return j;
}

Complex series_target(const Problem &problem, const FourierSeries &series) {
    PauliDecomposition unit = problem.a.rescaled();
    HermitianSpectrum spec(materialize(unit));
    const Vector &phi = problem.phi.amplitudes();
    const Vector &psi = problem.psi.amplitudes();
    Complex total = 0.0;
    for (Eigen::Index i = 0; i < spec.eigenvalues().size(); ++i) {
        Complex a = spec.eigenvectors().col(i).dot(phi);
        Complex b = spec.eigenvectors().col(i).dot(psi);
        total += std::conj(a) * b * series.evaluate(spec.eigenvalues()(i));
    }
    return total / series.lambda();
}

SolveReport run_solver(const Problem &problem, const FourierSeries &series, const KernelConfig &config,
                       std::uint64_t N_S, NoiseMode noise, std::uint64_t master_seed, const SolveOptions &options,
                       const KernelEvaluator *evaluator) {
    if (N_S < 1) {
        throw std::invalid_argument("N_S must be >= 1");
    }
    if (std::abs(series.lambda() - problem.a.lambda()) > 1e-9 * problem.a.lambda()) {
        throw std::invalid_argument("series was built for a different Pauli weight");
    }
    auto start = std::chrono::steady_clock::now();
    unsigned threads = resolve_threads(options.threads);
    std::optional<KernelEvaluator> own;
    if (evaluator == nullptr) {
        own.emplace(problem, series, config, threads);
        evaluator = &*own;
    }
    FourierSampler sampler(series);

    std::vector<std::uint64_t> checkpoints = options.checkpoints;
    checkpoints.push_back(N_S);
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
    checkpoints.erase(std::remove_if(checkpoints.begin(), checkpoints.end(),
                                     [&](std::uint64_t n) { return n < 1 || n > N_S; }),
                      checkpoints.end());

    SolveReport report;
    report.N_S = N_S;
    report.master_seed = master_seed;

    std::vector<SampleRecord> block(std::min<std::uint64_t>(kBlock, N_S));
    NeumaierSum sum_re;
    NeumaierSum sum_im;
    std::size_t next_checkpoint = 0;
    std::uint64_t max_r = 0;
    std::uint64_t max_n_cp = 0;
    std::uint64_t L = problem.a.size();
    for (std::uint64_t base = 0; base < N_S; base += kBlock) {
        std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, N_S - base));
        parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                std::uint64_t index = base + i;
                RngStream time_rng(master_seed, index, StreamTag::kFourierTime);
                RngStream kernel_rng(master_seed, index, StreamTag::kKernel);
                RngStream re_rng(master_seed, index, StreamTag::kShotReal);
                RngStream im_rng(master_seed, index, StreamTag::kShotImaginary);
                FourierSample s = sampler.sample(time_rng);
                KernelEvaluator::Evaluation e = evaluator->evaluate(s, kernel_rng);
                SampleRecord &rec = block[i];
                rec.index = index;
                rec.j = s.j;
                rec.k = s.k;
                rec.tau = s.tau;
                rec.kernel = config.kind;
                rec.r = e.r;
                rec.prefactor = s.omega * s.weight * e.factor;
                rec.re = shot_from_overlap(e.overlap, Part::kReal, noise, re_rng).value;
                rec.im = shot_from_overlap(e.overlap, Part::kImaginary, noise, im_rng).value;
                rec.z_hat = rec.prefactor * Complex(rec.re, rec.im);
            }
        });
        for (std::size_t i = 0; i < count; ++i) {
            const SampleRecord &rec = block[i];
            sum_re.add(rec.z_hat.real());
            sum_im.add(rec.z_hat.imag());
            max_r = std::max(max_r, rec.r);
            std::uint64_t n_cp = config.kind == KernelKind::kProductFormula ? 2 * rec.r * L
                                 : config.kind == KernelKind::kRandomTaylor ? rec.r
                                                                            : 0;
            max_n_cp = std::max(max_n_cp, n_cp);
            std::uint64_t done = base + i + 1;
            while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == done) {
                double n = static_cast<double>(done);
                report.checkpoints.emplace_back(done, Complex(sum_re.value() / n, sum_im.value() / n));
                ++next_checkpoint;
            }
            if (options.keep_samples) {
                report.samples.push_back(rec);
            }
        }
    }
    report.Z = report.checkpoints.back().second;

    if (problem.a.n_qubits() <= kMaxSimulatorQubits) {
        HermitianSpectrum spec(materialize(problem.a));
        Matrix inv = spec.inverse();
        report.truth = problem.phi.amplitudes().dot(inv * problem.psi.amplitudes());
        report.abs_error = std::abs(report.Z - *report.truth);
        report.series_target = series_target(problem, series);
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.diagnostics = {
        {"kernel", config.str()},
        {"noise", to_string(noise)},
        {"max_r", max_r},
        {"max_n_cp_per_sample", max_n_cp},
        {"threads", threads},
        {"J", series.J()},
        {"K", series.K()},
        {"lambda", series.lambda()},
        {"N_y", series.N_y()},
        {"N_z", series.N_z()},
        {"t_max", series.t_max()},
    };
    return report;
}

}  // namespace rfqls
