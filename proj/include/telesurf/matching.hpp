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

#ifndef TELESURF_MATCHING_HPP
#define TELESURF_MATCHING_HPP

#include <cstdint>
#include <vector>

namespace telesurf {

/// Exact maximum-weight matching on a complete graph (blossom algorithm with
/// dual adjustment, O(n^3)). `weights` is an n x n symmetric matrix with
/// strictly positive entries for usable edges and 0 for missing ones.
/// Returns mate[v] (-1 for unmatched) and the total weight.
struct MatchingResult {
  std::vector<int> mate;
  int64_t total_weight;
};
MatchingResult max_weight_matching(const std::vector<std::vector<int64_t>>& weights);

/// Exact minimum-weight perfect matching on a complete even-order graph with
/// non-negative costs. Realized by maximizing the reflected weights; with
/// all reflected weights positive a maximum matching on an even complete
/// graph is automatically perfect.
std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>>& costs);

}  // namespace telesurf

#endif  // TELESURF_MATCHING_HPP
