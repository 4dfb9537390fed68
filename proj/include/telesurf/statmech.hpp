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

#ifndef TELESURF_STATMECH_HPP
#define TELESURF_STATMECH_HPP

#include <cstdint>
#include <vector>

namespace telesurf {

/// D2 = -ln(tr01) + ln(tr00). Returns +inf when tr01 == 0.
double renyi_from_purities(double tr00, double tr01);

/// Renyi relative entropy of the two logical sectors as an exact Ising
/// partition-function ratio -ln(Z_wall / Z_fixed) on the X-face lattice of a
/// distance-L code, with coupling tanh(K) = 1 - 2p. Exact transfer-matrix
/// contraction; L <= 24.
double ising_relative_entropy(int L, double p);

/// Locates the crossing of D2(L1, p) and D2(L2, p) by bisection in p.
double ising_crossing(int l1, int l2, double p_lo, double p_hi);

struct PurityEstimate {
  double value = 0;
  double stderr_ = 0;
  uint64_t shots = 0;
};

enum class PairKind { Same, Orthogonal };

/// Stabilizer Monte-Carlo of the joint Bell (swap) measurement on two noisy
/// logical states: ro0 x ro0 or ro0 x ro1 with independent X and Z flips at
/// rate q per qubit per code; per-pair CNOT then X/Z readouts; the estimate
/// is the mean per-shot product of per-pair swap eigenvalues
/// v = (1 + x + z - xz)/2.
PurityEstimate simulate_bell_experiment(int d, double q, PairKind kind, uint64_t shots,
                                        uint64_t seed);

/// Dense density-matrix oracle (d <= 3): builds both logical states under
/// the noise channel and evaluates D2 directly. `p` is the pairwise-combined
/// flip rate (each state carries per-channel rate r with 2r(1-r) = p), so
/// the result matches ising_relative_entropy(L=d, p).
double dm_oracle_renyi(int d, double p);

/// tr(rho0^2) under independent X and Z flips at rate q per qubit (d <= 3);
/// calibration companion to the Bell estimator.
double dm_oracle_purity(int d, double q);

}  // namespace telesurf

#endif  // TELESURF_STATMECH_HPP
