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

#ifndef RFQLS_ESTIMATOR_H
#define RFQLS_ESTIMATOR_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rfqls/fourier.h"
#include "rfqls/kernel_pf.h"
#include "rfqls/kernel_rte.h"
#include "rfqls/linalg.h"
#include "rfqls/pauli.h"
#include "rfqls/sampler.h"
#include "rfqls/simulator.h"

namespace rfqls {

enum class KernelKind { kProductFormula, kRandomTaylor, kExact };

KernelKind parse_kernel_kind(const std::string &text);
std::string to_string(KernelKind kind);

/// N_y N_z f t_max^3 / (lambda r^2).
double pf_bias_bound(double N_y, double N_z, double lambda, double f, double t_max, double r);

/// Sample counts above this are reported in log10 only.
inline constexpr double kDeskScaleLimit = 1e15;

struct ResourceEstimate {
    KernelKind kernel = KernelKind::kProductFormula;
    /// False when no admissible r (PF) or n_max (RTE) brings the bias below eps/2.
    bool feasible = true;
    /// N_S exceeds kDeskScaleLimit; only log10_N_S is meaningful.
    bool infeasible_scale = false;
    std::uint64_t N_S = 0;
    double log10_N_S = 0.0;
    std::uint64_t N_CP = 0;
    std::uint64_t r = 0;
    unsigned n_max = 0;
    double bias_bound = 0.0;
    double log10_bias_bound = 0.0;
    /// RTE only: log10 of e^{2 t_max^2 / r}, the growth of N_S with t_max^2/r.
    double log10_prefactor = 0.0;
    std::string diagnostic;
    nlohmann::json inputs;

    nlohmann::json to_json() const;
};

ResourceEstimate pf_resources(double eps, double delta, double N_y, double N_z, double lambda, double f,
                              double t_max, std::uint64_t L, double r_cap = 1e9);

/// Requires r >= t_max. When no n_max <= kMaxRteOrder meets the bias
/// condition, the estimate is flagged infeasible and N_S is the B = 0 lower bound.
ResourceEstimate rte_resources(double eps, double delta, double N_y, double N_z, double lambda, double t_max,
                               double t_min_abs, double r);

/// <phi| A^{-1} |psi> for a known Hermitian A.
struct Problem {
    PauliDecomposition a;
    StateVector phi;
    StateVector psi;
    double kappa_star = 1.0;
};

struct KernelConfig {
    KernelKind kind = KernelKind::kExact;
    TrotterPolicy pf_policy = TrotterPolicy::fixed(1);
    RtePolicy rte_policy = RtePolicy::fixed(1);
    unsigned n_max = 20;

    /// "exact", "pf:<trotter policy>" or "rte:<segment policy>[:<n_max>]",
    /// e.g. "pf:quadratic:0.1" or "rte:fixed:100:20".
    static KernelConfig parse(const std::string &text);
    std::string str() const;
};

struct SampleRecord {
    std::uint64_t index = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    double tau = 0.0;
    KernelKind kernel = KernelKind::kExact;
    std::uint64_t r = 0;
    Complex prefactor;
    double re = 0.0;
    double im = 0.0;
    Complex z_hat;
};

/// Evaluates <phi| U(tau) |psi> for sampled Fourier times with a fixed kernel
/// configuration. Deterministic kernels (exact, product formula) tabulate the
/// overlap of every grid term once so that repeated runs share the work.
class KernelEvaluator {
   public:
    /// `problem` and `series` must outlive the evaluator.
    KernelEvaluator(const Problem &problem, const FourierSeries &series, const KernelConfig &config,
                    unsigned threads = 1);

    struct Evaluation {
        Complex overlap;
        Complex factor{1.0, 0.0};  // RTE: alpha^r times the sampled phase
        std::uint64_t r = 0;
    };

    /// `rng` is only consumed by the RTE kernel.
    Evaluation evaluate(const FourierSample &sample, RngStream &rng) const;

    const KernelConfig &config() const {
        return config_;
    }
    const PauliDecomposition &unit() const {
        return unit_;
    }
    bool tabulated() const {
        return !table_.empty();
    }

   private:
    Evaluation compute(double tau, RngStream *rng) const;

    const Problem *problem_;
    const FourierSeries *series_;
    KernelConfig config_;
    PauliDecomposition unit_;
    HermitianSpectrum spectrum_;
    std::optional<RTESampler> rte_;
    std::vector<Complex> table_;
    std::vector<std::uint64_t> table_r_;
};

/// Terms above which deterministic kernels are evaluated per sample.
inline constexpr std::uint64_t kMaxOverlapTable = std::uint64_t{1} << 22;

struct SolveOptions {
    unsigned threads = 1;
    /// Sample counts at which the running mean is recorded (N_S is always added).
    std::vector<std::uint64_t> checkpoints;
    bool keep_samples = false;
};

struct SolveReport {
    Complex Z;
    std::uint64_t N_S = 0;
    std::optional<Complex> truth;          // <phi| A^{-1} |psi>
    std::optional<Complex> series_target;  // lambda^{-1} <phi| F(A~) |psi>
    double abs_error = 0.0;
    double wall_time = 0.0;
    std::uint64_t master_seed = 0;
    std::vector<std::pair<std::uint64_t, Complex>> checkpoints;
    std::vector<SampleRecord> samples;
    nlohmann::json diagnostics;

    nlohmann::json to_json() const;
};

/// Monte Carlo estimate of <phi| A^{-1} |psi>: per sample one Fourier time,
/// one kernel unitary, and one Hadamard-test shot for each of the real and
/// imaginary parts. Results do not depend on the thread count.
SolveReport run_solver(const Problem &problem, const FourierSeries &series, const KernelConfig &config,
                       std::uint64_t N_S, NoiseMode noise, std::uint64_t master_seed,
                       const SolveOptions &options = {}, const KernelEvaluator *evaluator = nullptr);

/// lambda^{-1} <phi| F(A~) |psi> by eigendecomposition.
Complex series_target(const Problem &problem, const FourierSeries &series);

}  // namespace rfqls

#endif
