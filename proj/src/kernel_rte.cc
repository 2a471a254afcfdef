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
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rfqls {

RTESegmentModel segment_model(double tau, std::uint64_t r, unsigned n_max) {
    if (r < 1) {
        throw std::invalid_argument("segment count must be >= 1");
    }
    RTESegmentModel m;
    if (n_max % 2 == 1) {
        ++n_max;
    }
    if (n_max > kMaxRteOrder) {
        n_max = kMaxRteOrder;
        m.clamped = true;
    }
    m.n_max = n_max;
    double t = tau / static_cast<double>(r);
    m.tau_over_r = t;
    double log_abs_t = std::log(std::abs(t));
    m.alpha = 0.0;
    for (unsigned n = 0; n <= n_max; n += 2) {
        double x = t / (n + 1.0);
        double root = std::sqrt(1.0 + x * x);
        double mag;
        if (n == 0) {
            mag = 1.0;
        } else if (t == 0.0) {
            mag = 0.0;
        } else {
            mag = std::exp(n * log_abs_t - std::lgamma(n + 1.0));
        }
        m.orders.push_back(n);
        m.d.push_back(mag * root);
        m.theta.push_back(std::atan(std::abs(x)));
        m.alpha += mag * root;
    }
    m.order_distribution = DiscreteDistribution(m.d);
    return m;
}

double RTEUnitary::weight() const {
    return std::exp(log_weight);
}

Matrix RTEUnitary::to_matrix(unsigned n_qubits) const {
    std::size_t dim = std::size_t{1} << n_qubits;
    Matrix u = Matrix::Identity(dim, dim);
    for (const RTESegment &s : segments) {
        right_multiply_pauli(u, s.prefix);
        right_multiply_rotation(u, s.rotation);
    }
    return u;
}

void RTEUnitary::apply(Vector &state) const {
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        apply_rotation(it->rotation, state);
        apply_pauli(it->prefix, state);
    }
}

nlohmann::json RTEUnitary::to_json() const {
    nlohmann::json segs = nlohmann::json::array();
    for (const RTESegment &s : segments) {
        segs.push_back({{"order", s.order},
                        {"prefix", s.prefix.str()},
                        {"rotation", s.rotation.pauli.str()},
                        {"theta", s.rotation.angle}});
    }
    return {{"phase", {phase.real(), phase.imag()}}, {"log_weight", log_weight}, {"segments", segs}};
}

namespace {

std::vector<double> term_magnitudes(const PauliDecomposition &d) {
    std::vector<double> w;
    for (const PauliTerm &t : d.terms()) {
        w.push_back(std::abs(t.coeff));
    }
    return w;
}

const PauliDecomposition &require_unit(const PauliDecomposition &d) {
    if (d.size() == 0 || std::abs(d.lambda() - 1.0) > 1e-9) {
        throw std::invalid_argument("RTE sampling expects a decomposition with Pauli weight 1");
    }
    return d;
}

}  // namespace

RTESampler::RTESampler(const PauliDecomposition &unit)
    : unit_(&require_unit(unit)), terms_(term_magnitudes(unit)) {
}

RTESegment RTESampler::segment(const RTESegmentModel &model, std::size_t order_index,
                               const std::vector<std::size_t> &terms) const {
    unsigned n = model.orders.at(order_index);
    if (terms.size() != n + 1) {
        throw std::invalid_argument("an order-n segment needs n+1 term indices");
    }
    const PauliDecomposition &d = *unit_;
    RTESegment seg;
    seg.order = n;
    PhasedPauli prefix{0, PauliString::identity(d.n_qubits())};
    double sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;  // (-i)^n for even n
    for (unsigned i = 0; i < n; ++i) {
        const PauliTerm &term = d[terms[i]];
        prefix = pauli_product(prefix, PhasedPauli{0, term.pauli});
        if (term.coeff < 0.0) {
            sign = -sign;
        }
    }
    seg.prefix = prefix.pauli;
    seg.phase = sign * prefix.phase_value();
    const PauliTerm &last = d[terms[n]];
    double sigma = (model.tau_over_r < 0.0 ? -1.0 : 1.0) * (last.coeff < 0.0 ? -1.0 : 1.0);
    seg.rotation = PauliRotation{last.pauli, -sigma * model.theta[order_index]};
    return seg;
}

RTEUnitary RTESampler::sample(const RTESegmentModel &model, std::uint64_t r, RngStream &rng) const {
    RTEUnitary u;
    u.segments.reserve(r);
    u.log_weight = static_cast<double>(r) * std::log(model.alpha);
    std::vector<std::size_t> terms;
    for (std::uint64_t s = 0; s < r; ++s) {
        std::size_t oi = model.order_distribution.sample(rng);
        terms.resize(model.orders[oi] + 1);
        for (std::size_t &t : terms) {
            t = terms_.sample(rng);
        }
        u.segments.push_back(segment(model, oi, terms));
        u.phase *= u.segments.back().phase;
    }
    return u;
}

Complex RTESampler::sample_overlap(const RTESegmentModel &model, std::uint64_t r, RngStream &rng,
                                   const Vector &phi, const Vector &psi) const {
    Vector state = psi;
    Complex phase{1.0, 0.0};
    std::vector<std::size_t> terms;
    for (std::uint64_t s = 0; s < r; ++s) {
        std::size_t oi = model.order_distribution.sample(rng);
        terms.resize(model.orders[oi] + 1);
        for (std::size_t &t : terms) {
            t = terms_.sample(rng);
        }
        RTESegment seg = segment(model, oi, terms);
        apply_rotation(seg.rotation, state);
        apply_pauli(seg.prefix, state);
        phase *= seg.phase;
    }
    return phase * phi.dot(state);
}

double log_rte_bias_bound(double t_max, double t_min_abs, double r, double N_y, double N_z, unsigned n_max) {
    if (!(r >= 1.0) || !(t_max > 0.0) || n_max == 0) {
        throw std::invalid_argument("bias bound needs r >= 1, t_max > 0, n_max >= 1");
    }
    double n = n_max;
    return std::log(r * N_y * N_z / 2.0) + (t_max * t_max + t_max - t_min_abs) / r +
           n * std::log(std::numbers::e * t_max / (r * n));
}

double rte_bias_bound(double t_max, double t_min_abs, double r, double N_y, double N_z, unsigned n_max) {
    double lb = log_rte_bias_bound(t_max, t_min_abs, r, N_y, N_z, n_max);
    if (lb > std::log(std::numeric_limits<double>::max())) {
        return std::numeric_limits<double>::infinity();
    }
    return std::exp(lb);
}

NmaxChoice choose_nmax(double t_max, double t_min_abs, double r, double N_y, double N_z, double eps) {
    if (r < t_max) {
        throw std::invalid_argument("n_max selection requires r >= t_max");
    }
    if (!(eps > 0.0)) {
        throw std::invalid_argument("eps must be positive");
    }
    NmaxChoice c;
    c.log_prefactor = std::log(r * N_y * N_z / 2.0) + (t_max * t_max + t_max - t_min_abs) / r;
    double target = std::log(eps / 2.0);
    for (unsigned n = 2; n <= kMaxRteOrder; n += 2) {
        double lb = log_rte_bias_bound(t_max, t_min_abs, r, N_y, N_z, n);
        if (lb < target) {
            c.feasible = true;
            c.n_max = n;
            c.log_bound = lb;
            return c;
        }
    }
    c.n_max = kMaxRteOrder;
    c.log_bound = log_rte_bias_bound(t_max, t_min_abs, r, N_y, N_z, kMaxRteOrder);
    return c;
}

RtePolicy RtePolicy::fixed(std::uint64_t r) {
    if (r < 1) {
        throw std::invalid_argument("fixed segment count must be >= 1");
    }
    RtePolicy p;
    p.fixed_r_ = r;
    return p;
}

RtePolicy RtePolicy::quadratic(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("quadratic segment coefficient must be positive");
    }
    RtePolicy p;
    p.quadratic_ = true;
    p.c_ = c;
    return p;
}

RtePolicy RtePolicy::parse(const std::string &text) {
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string kind = text.substr(0, colon);
        std::string value = text.substr(colon + 1);
        try {
            if (kind == "fixed") {
                return fixed(std::stoull(value));
            }
            if (kind == "quadratic") {
                return quadratic(std::stod(value));
            }
        } catch (const std::logic_error &) {
        }
    }
    throw std::invalid_argument("bad RTE policy '" + text + "'; expected fixed:<r> or quadratic:<c>");
}

std::uint64_t RtePolicy::r_for(double tau) const {
    if (!quadratic_) {
        return fixed_r_;
    }
    double a = std::abs(tau);
    double r = std::max(std::ceil(a), std::ceil(c_ * a * a));
    if (!(r < 9.0e18)) {
        throw std::overflow_error("segment count overflows 64 bits");
    }
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(r));
}

std::string RtePolicy::str() const {
    std::ostringstream out;
    if (quadratic_) {
        out << "quadratic:" << c_;
    } else {
        out << "fixed:" << fixed_r_;
    }
    return out.str();
}

}  // namespace rfqls
