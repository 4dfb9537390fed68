// Copyright 2026 telesurf Contributors
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

#ifndef TELESURF_RNG_HPP
#define TELESURF_RNG_HPP

#include <cstdint>

namespace telesurf {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based random stream keyed by (seed, stream index).
///
/// Every Monte-Carlo shot gets its own stream, so results are bitwise
/// reproducible under any parallel schedule.
class Rng {
 public:
  Rng() : state_(0x853c49e6748fea9bULL) {}
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : state_(splitmix64(splitmix64(seed) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  bool bernoulli(double p) { return next_double() < p; }

  /// Uniform integer in [0, n).
  uint64_t next_below(uint64_t n) {
    // modulo bias is negligible for n << 2^64
    return next_u64() % n;
  }

 private:
  uint64_t state_;
};

}  // namespace telesurf

#endif  // TELESURF_RNG_HPP
