/*
 * Copyright 2026 latentview contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace lv {

// All randomness in the library flows through this wrapper. mt19937_64 is
// fully specified by the standard, and the draw helpers below avoid
// std::*_distribution (whose output is implementation-defined), so seeded
// results are identical across platforms and standard libraries.

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from (seed, stream tag, index).
// Used wherever per-user / per-epoch streams must not depend on the order
// or number of draws elsewhere.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream, uint64_t index = 0) {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) ^ index);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n). Rejection sampling, unbiased. n must be >= 1.
  size_t uniform_index(size_t n) {
    const uint64_t bound = n == 0 ? 0 : UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= bound);
    return static_cast<size_t>(x % n);
  }

  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Stream tags, one per independent use of randomness.
namespace rng_stream {
constexpr uint64_t kSplitItems = 1;
constexpr uint64_t kSplitEntries = 2;
constexpr uint64_t kSamplerUser = 3;
constexpr uint64_t kModelInit = 4;
constexpr uint64_t kEpochPermutation = 5;
constexpr uint64_t kKmeansSeeding = 6;
constexpr uint64_t kSynthComponents = 7;
constexpr uint64_t kSynthFactors = 8;
constexpr uint64_t kSynthBias = 9;
constexpr uint64_t kSynthNoise = 10;
constexpr uint64_t kSynthOwners = 11;
constexpr uint64_t kBaselinePairs = 12;
}  // namespace rng_stream

}  // namespace lv
