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

#ifndef RFQLS_RNG_H
#define RFQLS_RNG_H

#include <cstdint>
#include <limits>
#include <random>

namespace rfqls {

/// Stream labels; a sample draws its Fourier time, kernel and shots from
/// separate streams so that changing one consumer never shifts another.
enum class StreamTag : std::uint64_t {
    kFourierTime = 1,
    kKernel = 2,
    kShotReal = 3,
    kShotImaginary = 4,
    kTrial = 5,
    kMatrix = 6,
    kGeneric = 7,
};

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic generator keyed by (master_seed, index, tag). Streams with
/// different keys are statistically independent; the same key always
/// reproduces the same sequence regardless of thread scheduling.
/// Satisfies UniformRandomBitGenerator.
class RngStream {
   public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t master_seed, std::uint64_t index, StreamTag tag = StreamTag::kGeneric)
        : state_(mix64(mix64(master_seed ^ 0x6A09E667F3BCC909ULL) ^ mix64(index + 0x3C6EF372FE94F82BULL) ^
                       (static_cast<std::uint64_t>(tag) * 0x9E3779B97F4A7C15ULL))) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(*this);
    }

    double normal() {
        return std::normal_distribution<double>(0.0, 1.0)(*this);
    }

   private:
    std::uint64_t state_;
};

/// Seed of the t-th independent trial of an experiment.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
    return RngStream(master_seed, trial, StreamTag::kTrial)();
}

}  // namespace rfqls

#endif
