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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rfqls/estimator.h"
#include "rfqls/experiments.h"
#include "rfqls/fourier.h"
#include "rfqls/kernel_pf.h"
#include "rfqls/kernel_rte.h"
#include "rfqls/pauli.h"
#include "rfqls/simulator.h"

using nlohmann::json;
using namespace rfqls;

namespace {

struct Common {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out;
};

json manifest(const std::string &command, const json &config, const Common &common) {
    return {{"command", command},
            {"config", config},
            {"master_seed", common.seed},
            {"threads", common.threads},
            {"version", RFQLS_VERSION}};
}

// Writes to --out if given, stdout otherwise.
class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw std::runtime_error("cannot open " + path + " for writing");
            }
        }
    }
    std::ostream &stream() {
        return file_ ? static_cast<std::ostream &>(*file_) : std::cout;
    }

   private:
    std::unique_ptr<std::ofstream> file_;
};

void write_json(const Common &common, const json &j) {
    Output out(common.out);
    out.stream() << j.dump(2) << "\n";
}

// CSV preamble: the manifest as comment lines.
void write_csv_header(std::ostream &os, const json &m) {
    os << "# manifest: " << m.dump() << "\n";
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return json::parse(in);
}

void add_common(CLI::App *cmd, Common &common) {
    cmd->add_option("--seed", common.seed, "Master seed")->capture_default_str();
    cmd->add_option("--threads", common.threads, "Worker threads (0 = all cores)")->capture_default_str();
    cmd->add_option("--out", common.out, "Output path (stdout if omitted)");
}

struct SeriesArgs {
    double kappa_star = 10.0;
    double lambda = 1.0;
    double eps_T = 5e-3;
    double eps_D = 5e-3;

    void add(CLI::App *cmd) {
        cmd->add_option("--kappa-star", kappa_star, "Condition-number bound of A")->capture_default_str();
        cmd->add_option("--lambda", lambda, "Pauli weight used for rescaling")->capture_default_str();
        cmd->add_option("--eps-T", eps_T, "Truncation error")->capture_default_str();
        cmd->add_option("--eps-D", eps_D, "Discretization error")->capture_default_str();
    }
    json to_json() const {
        return {{"kappa_star", kappa_star}, {"lambda", lambda}, {"eps_T", eps_T}, {"eps_D", eps_D}};
    }
};

std::vector<double> domain_points(double kappa_tilde, std::size_t count) {
    // Evenly spaced over [1/k, 1], mirrored onto the negative half.
    std::size_t half = std::max<std::size_t>(count / 2, 2);
    std::vector<double> pts;
    for (std::size_t i = 0; i < half; ++i) {
        double x = 1.0 / kappa_tilde + (1.0 - 1.0 / kappa_tilde) * static_cast<double>(i) / (half - 1);
        pts.push_back(-x);
        pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

void warn_if_clamped(const KernelConfig &kernel) {
    if (kernel.kind == KernelKind::kRandomTaylor && kernel.n_max > kMaxRteOrder) {
        std::cerr << "warning: n_max " << kernel.n_max << " exceeds " << kMaxRteOrder
                  << "; the Taylor series is truncated at " << kMaxRteOrder << " to avoid underflow\n";
    }
}

// One row per sample: the kernel plan and, with the oracle, ||exp(-i A~ tau) - S_r(tau)||.
void write_plan_csv(const std::string &path, const json &m, const Problem &problem, const KernelConfig &kernel,
                    const SolveReport &rep, bool oracle) {
    PauliDecomposition unit = problem.a.rescaled();
    if (oracle && unit.n_qubits() > kMaxPfDenseQubits) {
        throw std::invalid_argument("--oracle needs at most " + std::to_string(kMaxPfDenseQubits) + " qubits");
    }
    std::map<std::pair<std::size_t, std::size_t>, double> errors;
    Output out(path);
    write_csv_header(out.stream(), m);
    out.stream() << "sample_index,tau,kernel,r,n_cp,kernel_error\n" << std::setprecision(17);
    std::uint64_t L = unit.size();
    for (const SampleRecord &r : rep.samples) {
        std::uint64_t n_cp = kernel.kind == KernelKind::kProductFormula ? 2 * r.r * L
                             : kernel.kind == KernelKind::kRandomTaylor ? r.r
                                                                        : 0;
        out.stream() << r.index << "," << r.tau << "," << to_string(kernel.kind) << "," << r.r << "," << n_cp
                     << ",";
        if (oracle && kernel.kind == KernelKind::kProductFormula) {
            auto key = std::make_pair(r.j, r.k);
            auto it = errors.find(key);
            if (it == errors.end()) {
                PFPlan plan = build_pf(unit, r.tau, r.r, true);
                double err = spectral_norm(exact_evolution(unit, r.tau) - *plan.dense_unitary);
                it = errors.emplace(key, err).first;
            }
            out.stream() << it->second;
        }
        out.stream() << "\n";
    }
}

// Re-draws the RTE unitaries of the first samples from their kernel streams.
void write_audit(const std::string &path, const json &m, const Problem &problem, const KernelConfig &kernel,
                 const SolveReport &rep, std::uint64_t count) {
    if (kernel.kind != KernelKind::kRandomTaylor) {
        throw std::invalid_argument("--audit applies to the rte kernel only");
    }
    PauliDecomposition unit = problem.a.rescaled();
    RTESampler sampler(unit);
    json samples = json::array();
    for (const SampleRecord &r : rep.samples) {
        if (samples.size() >= count) {
            break;
        }
        RngStream rng(rep.master_seed, r.index, StreamTag::kKernel);
        RTESegmentModel model = segment_model(r.tau, r.r, kernel.n_max);
        RTEUnitary u = sampler.sample(model, r.r, rng);
        // Segments act on |psi> in draw order, as in the estimator.
        Vector state = problem.psi.amplitudes();
        for (const RTESegment &seg : u.segments) {
            apply_rotation(seg.rotation, state);
            apply_pauli(seg.prefix, state);
        }
        Complex v = u.phase * problem.phi.amplitudes().dot(state);
        json entry = u.to_json();
        entry["sample_index"] = r.index;
        entry["tau"] = r.tau;
        entry["r"] = r.r;
        entry["n_max"] = model.n_max;
        entry["overlap"] = {v.real(), v.imag()};
        samples.push_back(entry);
    }
    Output out(path);
    out.stream() << std::setw(2) << json{{"manifest", m}, {"segment_order", "draw order; the first segment acts first"},
                                         {"samples", samples}}
                 << "\n";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Randomized Fourier-series linear systems solver (desk-scale simulation)"};
    app.set_version_flag("--version", std::string(RFQLS_VERSION));
    app.require_subcommand(1);

    Common common;

    // gen-matrix
    auto *gen = app.add_subcommand("gen-matrix", "Random Hermitian matrix with a prescribed condition number");
    unsigned gen_qubits = 2;
    double gen_kappa = 10.0;
    gen->add_option("--qubits", gen_qubits, "Register width")->capture_default_str();
    gen->add_option("--kappa", gen_kappa, "Condition number")->capture_default_str();
    add_common(gen, common);

    // params
    auto *params = app.add_subcommand("params", "Truncation and grid parameters of the Fourier series");
    SeriesArgs params_args;
    params_args.add(params);
    add_common(params, common);

    // build-series
    auto *build = app.add_subcommand("build-series", "Build the Fourier series and report its constants");
    SeriesArgs build_args;
    bool build_arrays = false;
    build_args.add(build);
    build->add_flag("--arrays", build_arrays, "Include node and weight arrays");
    add_common(build, common);

    // verify-series
    auto *verify = app.add_subcommand("verify-series", "Evaluate the series against 1/x on the domain (CSV)");
    SeriesArgs verify_args;
    std::size_t verify_points = 1000;
    bool verify_direct = false;
    verify_args.add(verify);
    verify->add_option("--points", verify_points, "Number of evaluation points")->capture_default_str();
    verify->add_flag("--direct", verify_direct, "Use the plain complex J*K sum");
    add_common(verify, common);

    // table1
    auto *table = app.add_subcommand("table1", "Grid sizes for the twelve reference settings (CSV)");
    unsigned table_trials = 0;
    bool heavy = false;
    table->add_option("--trials", table_trials, "Random matrices checked per row")->capture_default_str();
    table->add_flag("--heavy", heavy, "Also run trials for the kappa = 1000 rows");
    add_common(table, common);

    // resources
    auto *res = app.add_subcommand("resources", "Sample and gate counts for a target accuracy");
    SeriesArgs res_args;
    std::string res_kernel = "pf";
    std::string res_matrix;
    double res_eps = 1e-2;
    double res_delta = 0.05;
    double res_f = -1.0;
    std::uint64_t res_L = 0;
    std::string res_r = "tmax";
    res_args.add(res);
    res->add_option("--kernel", res_kernel, "pf or rte")->capture_default_str();
    res->add_option("--matrix", res_matrix, "Matrix JSON (sets lambda, f and L)");
    res->add_option("--eps", res_eps, "Target accuracy")->capture_default_str();
    res->add_option("--delta", res_delta, "Failure probability")->capture_default_str();
    res->add_option("--f", res_f, "Commutator constant (pf, without --matrix)");
    res->add_option("--L", res_L, "Number of Pauli terms (pf, without --matrix)");
    res->add_option("--r", res_r, "RTE segments: a number, tmax or tmax2")->capture_default_str();
    add_common(res, common);

    // solve
    auto *solve = app.add_subcommand("solve", "Estimate <phi|A^-1|psi> by sampling");
    std::string solve_matrix;
    double solve_kappa = 10.0;
    unsigned solve_qubits = 2;
    double solve_eps_F = 2e-2;
    std::string solve_kernel = "pf:quadratic:0.1";
    std::string solve_noise = "gaussian";
    std::uint64_t solve_samples = 100000;
    std::string solve_phi = "0";
    std::string solve_psi = "0";
    std::string solve_samples_csv;
    std::string solve_plan_csv;
    bool solve_oracle = false;
    std::string solve_audit;
    std::uint64_t solve_audit_count = 10;
    double solve_kappa_star = 0.0;
    solve->add_option("--matrix", solve_matrix, "Matrix JSON (otherwise one is generated)");
    solve->add_option("--kappa", solve_kappa, "Condition number of the generated matrix")->capture_default_str();
    solve->add_option("--qubits", solve_qubits, "Width of the generated matrix")->capture_default_str();
    solve->add_option("--kappa-star", solve_kappa_star, "Condition-number bound (default: exact)");
    solve->add_option("--eps-F", solve_eps_F, "Series error, split evenly")->capture_default_str();
    solve->add_option("--kernel", solve_kernel, "exact | pf:<policy> | rte:<policy>[:n_max]")
        ->capture_default_str();
    solve->add_option("--noise", solve_noise, "bernoulli | gaussian | exact")->capture_default_str();
    solve->add_option("--samples", solve_samples, "N_S")->capture_default_str();
    solve->add_option("--phi", solve_phi, "Basis index or JSON amplitude list")->capture_default_str();
    solve->add_option("--psi", solve_psi, "Basis index or JSON amplitude list")->capture_default_str();
    solve->add_option("--samples-csv", solve_samples_csv, "Write per-sample records here");
    solve->add_option("--plan-csv", solve_plan_csv, "Write per-sample kernel plans (tau, r, N_CP) here");
    solve->add_flag("--oracle", solve_oracle, "Add the measured product-formula error to --plan-csv");
    solve->add_option("--audit", solve_audit, "Write sampled RTE unitaries as JSON here");
    solve->add_option("--audit-count", solve_audit_count, "Samples written by --audit")->capture_default_str();
    add_common(solve, common);

    // rmse-sweep
    auto *sweep = app.add_subcommand("rmse-sweep", "RMSE against sample count for several kernels (CSV)");
    RmseSweepConfig sweep_cfg;
    std::string sweep_noise = "gaussian";
    std::vector<std::string> sweep_policies;
    sweep->add_option("--kappa", sweep_cfg.kappa, "Condition number")->capture_default_str();
    sweep->add_option("--qubits", sweep_cfg.n_qubits, "Register width")->capture_default_str();
    sweep->add_option("--eps-F", sweep_cfg.eps_F, "Series error, split evenly")->capture_default_str();
    sweep->add_option("--noise", sweep_noise, "bernoulli | gaussian | exact")->capture_default_str();
    sweep->add_option("--trials", sweep_cfg.trials, "Independent runs")->capture_default_str();
    sweep->add_option("--min-samples", sweep_cfg.min_samples, "First schedule point")->capture_default_str();
    sweep->add_option("--max-samples", sweep_cfg.max_samples, "Last schedule point")->capture_default_str();
    sweep->add_option("--per-decade", sweep_cfg.points_per_decade, "Schedule density")->capture_default_str();
    sweep->add_option("--policy", sweep_policies, "label=kernel, repeatable (default: the four reference curves)");
    add_common(sweep, common);

    // rte-single
    auto *rte = app.add_subcommand("rte-single", "RMSE of the RTE estimate of Re<0|exp(-iA tau)|0> (CSV)");
    RteSingleConfig rte_cfg;
    std::vector<double> rte_taus;
    rte->add_option("--kappa", rte_cfg.kappa, "Condition number")->capture_default_str();
    rte->add_option("--qubits", rte_cfg.n_qubits, "Register width")->capture_default_str();
    rte->add_option("--r", rte_cfg.r, "Segments")->capture_default_str();
    rte->add_option("--tau", rte_taus, "Evolution times, repeatable (default 1 20 50 80)");
    rte->add_option("--n-max", rte_cfg.n_max, "Taylor truncation order")->capture_default_str();
    rte->add_option("--trials", rte_cfg.trials, "Independent runs")->capture_default_str();
    rte->add_option("--min-samples", rte_cfg.min_samples, "First schedule point")->capture_default_str();
    rte->add_option("--max-samples", rte_cfg.max_samples, "Last schedule point")->capture_default_str();
    rte->add_option("--per-decade", rte_cfg.points_per_decade, "Schedule density")->capture_default_str();
    add_common(rte, common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            GeneratedMatrix m = gen_matrix(gen_qubits, gen_kappa, common.seed);
            json j = m.to_json();
            j["manifest"] = manifest("gen-matrix", {{"qubits", gen_qubits}, {"kappa", gen_kappa}}, common);
            write_json(common, j);
        } else if (*params) {
            const SeriesArgs &a = params_args;
            double kt = rescale(a.kappa_star, a.lambda);
            TruncationParams t = truncation_params(kt, a.eps_T);
            GridSize g = fourier_params(kt, a.eps_T, a.eps_D, t);
            json j = {{"kappa_tilde", kt}, {"y_max", t.y_max}, {"z_max", t.z_max}, {"t_max", t.t_max},
                      {"J", g.J},          {"K", g.K},         {"terms", static_cast<double>(g.J) * g.K}};
            j["manifest"] = manifest("params", a.to_json(), common);
            write_json(common, j);
        } else if (*build) {
            const SeriesArgs &a = build_args;
            FourierSeries s = FourierSeries::build(a.kappa_star, a.lambda, a.eps_T, a.eps_D);
            json j = s.to_json(build_arrays);
            j["manifest"] = manifest("build-series", a.to_json(), common);
            write_json(common, j);
        } else if (*verify) {
            const SeriesArgs &a = verify_args;
            FourierSeries s = FourierSeries::build(a.kappa_star, a.lambda, a.eps_T, a.eps_D);
            Output out(common.out);
            json cfg = a.to_json();
            cfg["points"] = verify_points;
            cfg["direct"] = verify_direct;
            write_csv_header(out.stream(), manifest("verify-series", cfg, common));
            out.stream() << "x,series_value_re,series_value_im,abs_error\n" << std::setprecision(17);
            for (double x : domain_points(s.kappa_tilde(), verify_points)) {
                Complex v = verify_direct ? s.evaluate_direct(x) : Complex(s.evaluate(x), 0.0);
                out.stream() << x << "," << v.real() << "," << v.imag() << "," << std::abs(1.0 / x - v) << "\n";
            }
        } else if (*table) {
            Output out(common.out);
            write_csv_header(out.stream(),
                             manifest("table1", {{"trials", table_trials}, {"heavy", heavy}}, common));
            out.stream() << "kappa,eps_F,J,K,y_max,z_max,t_max,trials,max_error,seconds\n" << std::setprecision(10);
            for (auto [kappa, eps] : table1_settings()) {
                unsigned trials = (kappa >= 1000.0 && !heavy) ? 0 : table_trials;
                Table1Row r = table1_row(kappa, eps, trials, common.seed);
                out.stream() << r.kappa << "," << r.eps_F << "," << r.J << "," << r.K << "," << r.y_max << ","
                             << r.z_max << "," << r.t_max << "," << r.trials << ",";
                if (r.trials > 0) {
                    out.stream() << r.max_error;
                }
                out.stream() << "," << r.seconds << "\n";
            }
        } else if (*res) {
            SeriesArgs a = res_args;
            double f = res_f;
            std::uint64_t L = res_L;
            if (!res_matrix.empty()) {
                PauliDecomposition d = load_matrix_json(read_json_file(res_matrix));
                a.lambda = std::max(1.0, d.lambda());
                L = d.size();
                if (res_kernel == "pf" && f < 0.0) {
                    f = commutator_constant(d, d.n_qubits() <= 8 ? CommutatorNorm::kExact : CommutatorNorm::kLoose);
                }
            }
            FourierSeries s = FourierSeries::build(a.kappa_star, a.lambda, a.eps_T, a.eps_D);
            ResourceEstimate est;
            if (res_kernel == "pf") {
                if (f < 0.0 || L == 0) {
                    throw std::invalid_argument("pf resources need --matrix or both --f and --L");
                }
                est = pf_resources(res_eps, res_delta, s.N_y(), s.N_z(), s.lambda(), f, s.t_max(), L);
            } else if (res_kernel == "rte") {
                double r;
                if (res_r == "tmax") {
                    r = std::ceil(s.t_max());
                } else if (res_r == "tmax2") {
                    r = std::ceil(s.t_max() * s.t_max());
                } else {
                    r = std::stod(res_r);
                }
                est = rte_resources(res_eps, res_delta, s.N_y(), s.N_z(), s.lambda(), s.t_max(), s.t_min_abs(), r);
            } else {
                throw std::invalid_argument("--kernel must be pf or rte");
            }
            json cfg = a.to_json();
            cfg.update({{"kernel", res_kernel}, {"eps", res_eps}, {"delta", res_delta}, {"r", res_r}});
            json j = est.to_json();
            j["series"] = s.to_json(false);
            j["manifest"] = manifest("resources", cfg, common);
            write_json(common, j);
        } else if (*solve) {
            PauliDecomposition d;
            json cfg = {{"kernel", solve_kernel}, {"noise", solve_noise}, {"samples", solve_samples},
                        {"eps_F", solve_eps_F}, {"phi", solve_phi},       {"psi", solve_psi}};
            double kappa_star = solve_kappa_star;
            if (!solve_matrix.empty()) {
                d = load_matrix_json(read_json_file(solve_matrix));
                cfg["matrix"] = solve_matrix;
            } else {
                GeneratedMatrix m = gen_matrix(solve_qubits, solve_kappa, common.seed);
                d = m.decomposition;
                cfg["generated"] = {{"qubits", solve_qubits}, {"kappa", solve_kappa}};
            }
            if (kappa_star <= 0.0) {
                Eigen::VectorXd ev = HermitianSpectrum(materialize(d)).eigenvalues().cwiseAbs();
                kappa_star = ev.maxCoeff() / ev.minCoeff();
            }
            cfg["kappa_star"] = kappa_star;
            auto parse_state = [&](const std::string &text) {
                return StateVector::from_json(json::parse(text), d.n_qubits());
            };
            Problem problem{d, parse_state(solve_phi), parse_state(solve_psi), kappa_star};
            if (d.lambda() < 1.0) {
                throw std::invalid_argument("Pauli weight below 1; scale the matrix so that lambda >= 1");
            }
            FourierSeries s = FourierSeries::build(kappa_star, d.lambda(), solve_eps_F / 2.0, solve_eps_F / 2.0);
            KernelConfig kernel = KernelConfig::parse(solve_kernel);
            warn_if_clamped(kernel);
            SolveOptions opts;
            opts.threads = common.threads;
            opts.keep_samples = !solve_samples_csv.empty() || !solve_plan_csv.empty() || !solve_audit.empty();
            SolveReport rep = run_solver(problem, s, kernel, solve_samples, parse_noise_mode(solve_noise),
                                         common.seed, opts);
            json j = rep.to_json();
            j["manifest"] = manifest("solve", cfg, common);
            write_json(common, j);
            if (!solve_samples_csv.empty()) {
                Output out(solve_samples_csv);
                write_csv_header(out.stream(), j["manifest"]);
                out.stream() << "sample_index,j,k,tau,r,prefactor_re,prefactor_im,re,im,z_hat_re,z_hat_im\n"
                             << std::setprecision(17);
                for (const SampleRecord &r : rep.samples) {
                    out.stream() << r.index << "," << r.j << "," << r.k << "," << r.tau << "," << r.r << ","
                                 << r.prefactor.real() << "," << r.prefactor.imag() << "," << r.re << "," << r.im
                                 << "," << r.z_hat.real() << "," << r.z_hat.imag() << "\n";
                }
            }
            if (!solve_plan_csv.empty()) {
                write_plan_csv(solve_plan_csv, j["manifest"], problem, kernel, rep, solve_oracle);
            }
            if (!solve_audit.empty()) {
                write_audit(solve_audit, j["manifest"], problem, kernel, rep, solve_audit_count);
            }
        } else if (*sweep) {
            sweep_cfg.noise = parse_noise_mode(sweep_noise);
            sweep_cfg.seed = common.seed;
            sweep_cfg.threads = common.threads;
            for (const std::string &p : sweep_policies) {
                auto eq = p.find('=');
                if (eq == std::string::npos) {
                    throw std::invalid_argument("--policy expects label=kernel, got '" + p + "'");
                }
                sweep_cfg.policies.push_back({p.substr(0, eq), KernelConfig::parse(p.substr(eq + 1))});
            }
            if (sweep_cfg.policies.empty()) {
                sweep_cfg.policies = RmseSweepConfig::default_policies();
            }
            RmseSweepResult r = rmse_sweep(sweep_cfg);
            Output out(common.out);
            json m = manifest("rmse-sweep", sweep_cfg.to_json(), common);
            m["J"] = r.J;
            m["K"] = r.K;
            m["lambda"] = r.matrix.lambda;
            m["truth"] = {r.truth.real(), r.truth.imag()};
            write_csv_header(out.stream(), m);
            out.stream() << "policy,N_S,rmse\n" << std::setprecision(10);
            for (const RmseCurve &c : r.curves) {
                for (std::size_t i = 0; i < c.n.size(); ++i) {
                    out.stream() << c.label << "," << c.n[i] << "," << c.rmse[i] << "\n";
                }
            }
        } else if (*rte) {
            if (!rte_taus.empty()) {
                rte_cfg.taus = rte_taus;
            }
            KernelConfig rte_kernel;
            rte_kernel.kind = KernelKind::kRandomTaylor;
            rte_kernel.n_max = rte_cfg.n_max;
            warn_if_clamped(rte_kernel);
            rte_cfg.seed = common.seed;
            rte_cfg.threads = common.threads;
            RteSingleResult r = rte_single(rte_cfg);
            Output out(common.out);
            json m = manifest("rte-single", rte_cfg.to_json(), common);
            m["lambda"] = r.matrix.lambda;
            write_csv_header(out.stream(), m);
            out.stream() << "tau,N_samples,rmse,exact,log_weight\n" << std::setprecision(10);
            for (const RteSingleCurve &c : r.curves) {
                for (std::size_t i = 0; i < c.n.size(); ++i) {
                    out.stream() << c.tau << "," << c.n[i] << "," << c.rmse[i] << "," << c.exact << ","
                                 << c.log_weight << "\n";
                }
            }
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
