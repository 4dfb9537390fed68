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

#ifndef TELESURF_COSET_TRANSFER_HPP
#define TELESURF_COSET_TRANSFER_HPP

#include <utility>
#include <vector>

#include "telesurf/layout.hpp"

namespace telesurf {

/// Exact transfer contraction of the X-face spin sum
///   W(E) = sum over g in <B_f> of q^{|E xor g|} (1-q)^{n - |E xor g|},
/// the coset weight behind the maximum-likelihood decoder and, as a
/// partition-function ratio, the Ising relative-entropy engine. Qubits are
/// processed column by column; face spins activate at their first qubit and
/// are summed out after their last, so the live frontier stays near d/2
/// spins and the contraction is exact (no truncation) up to d ~ 24.
class CosetTransfer {
 public:
  explicit CosetTransfer(const CodeLayout& layout);

  /// Natural log of W(E).
  double log_weight(const ErrorPattern& ref, double q) const;

  /// (log W(E), log W(E xor X_L)); the contraction prefix before the
  /// logical column is shared between the two cosets.
  std::pair<double, double> coset_log_weights(const ErrorPattern& ref, double q) const;

  int frontier_width() const { return width_; }

 private:
  struct Op {
    enum Kind { Activate, Factor, Retire } kind;
    int slot = -1;
    int slot2 = -1;  // second face slot for bulk qubits, -1 otherwise
    int qubit = -1;
  };

  struct RunState {
    std::vector<double> amp;
    double log_scale = 0;
  };

  void run_ops(RunState& st, size_t first_op, size_t last_op, const ErrorPattern& ref,
               bool flip_logical, double q) const;

  int n_ = 0;
  int width_ = 0;
  size_t branch_op_ = 0;  // first op touching the logical-X column
  std::vector<Op> ops_;
  BitVec logical_mask_;
};

}  // namespace telesurf

#endif  // TELESURF_COSET_TRANSFER_HPP
