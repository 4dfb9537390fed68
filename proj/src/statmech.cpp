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

#include "telesurf/statmech.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "telesurf/coset_transfer.hpp"
#include "telesurf/layout.hpp"
#include "telesurf/parallel.hpp"
#include "telesurf/prep.hpp"
#include "telesurf/statevector.hpp"
#include "telesurf/teleport.hpp"

namespace telesurf {

double renyi_from_purities(double tr00, double tr01) {
  if (!(tr00 > 0)) throw std::invalid_argument("tr(rho0^2) must be positive");
  if (tr01 < 0) throw std::invalid_argument("tr(rho0 rho1) must be non-negative");
  if (tr01 == 0) return std::numeric_limits<double>::infinity();
  return -std::log(tr01) + std::log(tr00);
}

namespace {

const CosetTransfer& transfer_for(int L) {
  static std::mutex mu;
  static std::map<int, CosetTransfer> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(L);
  if (it == cache.end()) it = cache.emplace(L, CosetTransfer(build_layout(L))).first;
  return it->second;
}

/// |0_L> x |0_L> register: code A on qubits 0..n-1, code B on n..2n-1.
Tableau dual_code_tableau(int d) {
  const int n = d * d;
  CliffordCircuit prep = build_prep_unitary(d, false);
  CliffordCircuit both;
  both.n = 2 * n;
  for (const auto& layer : prep.layers) {
    std::vector<Gate> combined;
    for (const auto& g : layer) {
      combined.push_back(g);
      Gate shifted = g;
      shifted.q0 += n;
      if (shifted.is_two_qubit()) shifted.q1 += n;
      combined.push_back(shifted);
    }
    both.append_layer(std::move(combined));
  }
  Rng rng(0);
  return simulate(both, Tableau::zero_state(2 * n), rng).tableau;
}

}  // namespace

double ising_relative_entropy(int L, double p) {
  if (L < 2 || L > 24) throw std::invalid_argument("lattice size must lie in [2, 24]");
  if (!(p > 0) || p > 0.5) throw std::invalid_argument("p must lie in (0, 1/2]");
  const CosetTransfer& transfer = transfer_for(L);
  ErrorPattern zero(L * L);
  auto [l0, l1] = transfer.coset_log_weights(zero, p);
  return l0 - l1;
}

double ising_crossing(int l1, int l2, double p_lo, double p_hi) {
  auto gap = [&](double p) {
    return ising_relative_entropy(l1, p) - ising_relative_entropy(l2, p);
  };
  double glo = gap(p_lo), ghi = gap(p_hi);
  if (glo * ghi > 0) throw std::invalid_argument("crossing not bracketed");
  for (int it = 0; it < 60; ++it) {
    double mid = (p_lo + p_hi) / 2;
    double gm = gap(mid);
    if ((gm <= 0) == (glo <= 0)) {
      p_lo = mid;
      glo = gm;
    } else {
      p_hi = mid;
    }
  }
  return (p_lo + p_hi) / 2;
}

PurityEstimate simulate_bell_experiment(int d, double q, PairKind kind, uint64_t shots,
                                        uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  if (d > 5) throw std::invalid_argument("bell simulation supports d <= 5");
  if (q < 0 || q > 0.5) throw std::invalid_argument("q must lie in [0, 1/2]");
  const int n = d * d;
  CodeLayout lay = build_layout(d);

  Tableau base = dual_code_tableau(d);
  if (kind == PairKind::Orthogonal) {
    PauliString xl(2 * n);
    for (int qb : lay.logical_x) xl.x.set(n + qb, true);
    base.apply_pauli(xl);
  }

  std::vector<int8_t> products(shots);
  parallel_for(shots, [&](uint64_t shot) {
    Rng rng(seed, shot);
    Tableau tab = base;
    for (int qb = 0; qb < 2 * n; ++qb) {
      if (rng.bernoulli(q)) tab.apply_x(qb);
      if (rng.bernoulli(q)) tab.apply_z(qb);
    }
    for (int j = 0; j < n; ++j) tab.apply_cnot(j, n + j);
    int product = 1;
    for (int j = 0; j < n; ++j) {
      tab.apply_h(j);
      int x = tab.measure_z(j, rng) ? -1 : 1;
      int z = tab.measure_z(n + j, rng) ? -1 : 1;
      product *= (1 + x + z - x * z) / 2;
    }
    products[shot] = static_cast<int8_t>(product);
  });
  int64_t total = 0;
  for (auto v : products) total += v;

  PurityEstimate est;
  est.shots = shots;
  est.value = static_cast<double>(total) / static_cast<double>(shots);
  double var = (shots > 1) ? static_cast<double>(shots) * (1 - est.value * est.value) /
                                 static_cast<double>(shots - 1)
                           : 0.0;
  est.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(shots));
  return est;
}

namespace {

Eigen::MatrixXcd noisy_logical_dm(int d, double rate, int logical) {
  StateVector s =
      prepare_logical_state(d, LogicalTarget{logical ? std::numbers::pi : 0.0, 0.0});
  Eigen::MatrixXcd rho = density_from_state(s);
  const int n = d * d;
  std::vector<Eigen::Matrix2cd> flip_x = {std::sqrt(1 - rate) * gates::identity2(),
                                          std::sqrt(rate) * gates::pauli_x()};
  std::vector<Eigen::Matrix2cd> flip_z = {std::sqrt(1 - rate) * gates::identity2(),
                                          std::sqrt(rate) * gates::pauli_z()};
  for (int qb = 0; qb < n; ++qb) {
    apply_1q_channel(rho, n, qb, flip_x);
    apply_1q_channel(rho, n, qb, flip_z);
  }
  return rho;
}

}  // namespace

double dm_oracle_renyi(int d, double p) {
  if (d > 3) throw std::invalid_argument("density-matrix oracle supports d <= 3");
  if (p < 0 || p > 0.5) throw std::invalid_argument("p must lie in [0, 1/2]");
  const double r = (1 - std::sqrt(1 - 2 * p)) / 2;  // per-state rate, 2r(1-r) = p
  Eigen::MatrixXcd rho0 = noisy_logical_dm(d, r, 0);
  Eigen::MatrixXcd rho1 = noisy_logical_dm(d, r, 1);
  return renyi_from_purities(overlap_trace(rho0, rho0), overlap_trace(rho0, rho1));
}

double dm_oracle_purity(int d, double q) {
  if (d > 3) throw std::invalid_argument("density-matrix oracle supports d <= 3");
  Eigen::MatrixXcd rho0 = noisy_logical_dm(d, q, 0);
  return overlap_trace(rho0, rho0);
}

}  // namespace telesurf
