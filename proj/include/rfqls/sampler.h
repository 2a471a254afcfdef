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

#ifndef RFQLS_SAMPLER_H
#define RFQLS_SAMPLER_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rfqls/fourier.h"
#include "rfqls/linalg.h"
#include "rfqls/rng.h"

namespace rfqls {

/// Walker/Vose alias table over {0, ..., n-1}. Entries with zero weight are
/// never returned.
class DiscreteDistribution {
   public:
    DiscreteDistribution() = default;
    /// Nonnegative weights, not necessarily normalized. Throws if all are zero
    /// or any is negative or non-finite.
    explicit DiscreteDistribution(const std::vector<double> &weights);

    std::size_t size() const {
        return probabilities_.size();
    }
    const std::vector<double> &probabilities() const {
        return probabilities_;
    }
    double probability(std::size_t i) const {
        return probabilities_[i];
    }

    std::size_t sample(RngStream &rng) const;

   private:
    std::vector<double> probabilities_;
    std::vector<double> accept_;
    std::vector<std::uint32_t> alias_;
};

struct FourierSample {
    std::size_t j = 0;
    std::size_t k = 0;
    double tau = 0.0;
    Complex omega;        // i sign(z_k)
    double weight = 0.0;  // N_y N_z / lambda
};

/// Importance sampler for the terms of a Fourier series: j ~ |wy_j|,
/// k ~ |delta_z z_k exp(-z_k^2/2)|, independently.
class FourierSampler {
   public:
    /// `series` must outlive the sampler.
    explicit FourierSampler(const FourierSeries &series);

    const DiscreteDistribution &p_y() const {
        return p_y_;
    }
    const DiscreteDistribution &p_z() const {
        return p_z_;
    }
    const FourierSeries &series() const {
        return *series_;
    }

    FourierSample sample(RngStream &rng) const;
    /// The sample for a given (j, k) without drawing.
    FourierSample outcome(std::size_t j, std::size_t k) const;

   private:
    const FourierSeries *series_;
    DiscreteDistribution p_y_;
    DiscreteDistribution p_z_;
    double weight_;
};

}  // namespace rfqls

#endif
