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
#include <limits>
#include <stdexcept>

namespace rfqls {

DiscreteDistribution::DiscreteDistribution(const std::vector<double> &weights) {
    if (weights.empty()) {
        throw std::invalid_argument("distribution needs at least one outcome");
    }
    if (weights.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("too many outcomes for an alias table");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("distribution weights must be finite and nonnegative");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("distribution weights are all zero");
    }

    std::size_t n = weights.size();
    probabilities_.resize(n);
    accept_.assign(n, 0.0);
    alias_.resize(n);
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small;
    std::vector<std::uint32_t> large;
    for (std::size_t i = 0; i < n; ++i) {
        probabilities_[i] = weights[i] / total;
        scaled[i] = probabilities_[i] * static_cast<double>(n);
        alias_[i] = static_cast<std::uint32_t>(i);
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        std::uint32_t s = small.back();
        small.pop_back();
        std::uint32_t l = large.back();
        accept_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers are 1 up to rounding. A zero-weight leftover must still never
    // be returned, so redirect it to a positive outcome.
    std::uint32_t fallback = 0;
    while (probabilities_[fallback] == 0.0) {
        ++fallback;
    }
    for (auto bucket : {&small, &large}) {
        for (std::uint32_t i : *bucket) {
            if (probabilities_[i] > 0.0) {
                accept_[i] = 1.0;
            } else {
                accept_[i] = 0.0;
                alias_[i] = fallback;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (probabilities_[alias_[i]] == 0.0) {
            alias_[i] = fallback;
        }
        if (probabilities_[i] == 0.0) {
            accept_[i] = 0.0;
        }
    }
}

std::size_t DiscreteDistribution::sample(RngStream &rng) const {
    std::size_t n = accept_.size();
    std::size_t i = std::min(static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)), n - 1);
    return rng.uniform() < accept_[i] ? i : alias_[i];
}

namespace {

std::vector<double> abs_values(const std::vector<double> &v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::abs(v[i]);
    }
    return out;
}

}  // namespace

FourierSampler::FourierSampler(const FourierSeries &series)
    : series_(&series),
      p_y_(abs_values(series.grid().wy_weights)),
      p_z_(abs_values(series.grid().z_amplitudes)),
      weight_(series.N_y() * series.N_z() / series.lambda()) {
}

FourierSample FourierSampler::outcome(std::size_t j, std::size_t k) const {
    FourierSample s;
    s.j = j;
    s.k = k;
    s.tau = series_->time(j, k);
    double z = series_->grid().z_nodes[k];
    s.omega = z > 0.0 ? kI : (z < 0.0 ? -kI : Complex(0.0));
    s.weight = weight_;
    return s;
}

FourierSample FourierSampler::sample(RngStream &rng) const {
    std::size_t j = p_y_.sample(rng);
    std::size_t k = p_z_.sample(rng);
    return outcome(j, k);
}

}  // namespace rfqls
