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

#include "telesurf/coset_transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace telesurf {

CosetTransfer::CosetTransfer(const CodeLayout& lay) {
  const int d = lay.distance;
  n_ = lay.num_qubits();
  logical_mask_ = BitVec(n_);
  for (int q : lay.logical_x) logical_mask_.set(q, true);

  // qubit sweep order: by column, then row
  std::vector<int> order(n_);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    auto [ra, ca] = lay.qubits[a];
    auto [rb, cb] = lay.qubits[b];
    return std::make_pair(ca, ra) < std::make_pair(cb, rb);
  });
  std::vector<int> pos(n_);
  for (int i = 0; i < n_; ++i) pos[order[i]] = i;

  const size_t nf = lay.x_faces.size();
  std::vector<int> first_touch(nf, n_), last_touch(nf, -1);
  for (size_t f = 0; f < nf; ++f) {
    for (int q : lay.x_faces[f].qubits) {
      first_touch[f] = std::min(first_touch[f], pos[q]);
      last_touch[f] = std::max(last_touch[f], pos[q]);
    }
  }

  std::vector<int> slot_of(nf, -1);
  std::vector<int> free_slots;
  int high_water = 0;
  branch_op_ = SIZE_MAX;

  for (int k = 0; k < n_; ++k) {
    const int q = order[k];
    for (size_t f = 0; f < nf; ++f) {
      if (first_touch[f] != k) continue;
      int slot;
      if (!free_slots.empty()) {
        slot = free_slots.back();
        free_slots.pop_back();
      } else {
        slot = high_water++;
      }
      slot_of[f] = slot;
      ops_.push_back({Op::Activate, slot, -1, -1});
    }
    Op fac{Op::Factor, -1, -1, q};
    const auto& owners = lay.qubit_to_x[q];
    if (!owners.empty()) fac.slot = slot_of[owners[0]];
    if (owners.size() > 1) fac.slot2 = slot_of[owners[1]];
    if (branch_op_ == SIZE_MAX && lay.qubits[q].second == d - 1) branch_op_ = ops_.size();
    ops_.push_back(fac);
    for (size_t f = 0; f < nf; ++f) {
      if (last_touch[f] != k) continue;
      ops_.push_back({Op::Retire, slot_of[f], -1, -1});
      free_slots.push_back(slot_of[f]);
      slot_of[f] = -1;
    }
  }
  width_ = high_water;
  if (branch_op_ == SIZE_MAX) branch_op_ = ops_.size();
  if (width_ > 26) throw std::invalid_argument("code distance too large for exact contraction");
}

void CosetTransfer::run_ops(RunState& st, size_t first_op, size_t last_op,
                            const ErrorPattern& ref, bool flip_logical, double q) const {
  const double w[2] = {1 - q, q};
  const size_t dim = st.amp.size();
  for (size_t oi = first_op; oi < last_op; ++oi) {
    const Op& op = ops_[oi];
    switch (op.kind) {
      case Op::Activate: {
        const size_t bit = size_t{1} << op.slot;
        for (size_t i = 0; i < dim; ++i)
          if (!(i & bit)) st.amp[i | bit] = st.amp[i];
        break;
      }
      case Op::Factor: {
        int e = ref.get(op.qubit) ? 1 : 0;
        if (flip_logical && logical_mask_.get(op.qubit)) e ^= 1;
        if (op.slot < 0) {
          st.log_scale += std::log(w[e]);
          break;
        }
        const size_t b1 = size_t{1} << op.slot;
        const size_t b2 = op.slot2 >= 0 ? size_t{1} << op.slot2 : 0;
        for (size_t i = 0; i < dim; ++i) {
          int flip = e ^ ((i & b1) ? 1 : 0) ^ ((b2 && (i & b2)) ? 1 : 0);
          st.amp[i] *= w[flip];
        }
        break;
      }
      case Op::Retire: {
        const size_t bit = size_t{1} << op.slot;
        double peak = 0;
        for (size_t i = 0; i < dim; ++i) {
          if (i & bit) continue;
          st.amp[i] += st.amp[i | bit];
          st.amp[i | bit] = 0;
          peak = std::max(peak, std::abs(st.amp[i]));
        }
        if (peak > 0 && (peak < 1e-60 || peak > 1e60)) {
          st.log_scale += std::log(peak);
          const double inv = 1 / peak;
          for (double& a : st.amp) a *= inv;
        }
        break;
      }
    }
  }
}

double CosetTransfer::log_weight(const ErrorPattern& ref, double q) const {
  if (static_cast<int>(ref.size()) != n_)
    throw std::invalid_argument("reference pattern length mismatch");
  if (!(q > 0) || !(q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  RunState st;
  st.amp.assign(size_t{1} << width_, 0.0);
  st.amp[0] = 1.0;
  run_ops(st, 0, ops_.size(), ref, false, q);
  return std::log(st.amp[0]) + st.log_scale;
}

std::pair<double, double> CosetTransfer::coset_log_weights(const ErrorPattern& ref,
                                                           double q) const {
  if (static_cast<int>(ref.size()) != n_)
    throw std::invalid_argument("reference pattern length mismatch");
  if (!(q > 0) || !(q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  RunState st;
  st.amp.assign(size_t{1} << width_, 0.0);
  st.amp[0] = 1.0;
  run_ops(st, 0, branch_op_, ref, false, q);
  RunState st2 = st;
  run_ops(st, branch_op_, ops_.size(), ref, false, q);
  run_ops(st2, branch_op_, ops_.size(), ref, true, q);
  return {std::log(st.amp[0]) + st.log_scale, std::log(st2.amp[0]) + st2.log_scale};
}

}  // namespace telesurf
