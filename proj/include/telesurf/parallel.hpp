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

#ifndef TELESURF_PARALLEL_HPP
#define TELESURF_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace telesurf {

/// Runs fn(i) for i in [0, n) across hardware threads.
///
/// Work is handed out in chunks through an atomic counter. Callers that need
/// reproducible results must make fn(i) depend only on i (per-index RNG
/// streams, commutative accumulation).
inline void parallel_for(uint64_t n, const std::function<void(uint64_t)>& fn,
                         unsigned num_threads = 0) {
  if (num_threads == 0) num_threads = std::max(1u, std::thread::hardware_concurrency());
  if (num_threads == 1 || n < 2) {
    for (uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<uint64_t> next{0};
  const uint64_t chunk = std::max<uint64_t>(1, n / (num_threads * 32));
  std::vector<std::thread> pool;
  pool.reserve(num_threads);
  for (unsigned t = 0; t < num_threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        uint64_t lo = next.fetch_add(chunk);
        if (lo >= n) return;
        uint64_t hi = std::min(n, lo + chunk);
        for (uint64_t i = lo; i < hi; ++i) fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace telesurf

#endif  // TELESURF_PARALLEL_HPP
