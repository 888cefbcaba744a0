// Copyright 2026 The m2o Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef M2O_SRC_RNG_HPP_
#define M2O_SRC_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace m2o::internal {

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent, reproducible sub-stream seed for (seed, stream, index).
inline std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t index = 0) {
  return SplitMix64(SplitMix64(SplitMix64(seed) ^ stream) + index);
}

// Thin wrapper over mt19937_64 with portable (library-independent) draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, n]; n < 2^32.
  std::uint32_t UniformInt(std::uint32_t n) {
    const std::uint64_t range = static_cast<std::uint64_t>(n) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::uint32_t>(x % range);
  }
  double Exponential(double mean) { return -mean * std::log1p(-Uniform()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace m2o::internal

#endif  // M2O_SRC_RNG_HPP_
