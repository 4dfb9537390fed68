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

#ifndef TELESURF_TELEPORT_HPP
#define TELESURF_TELEPORT_HPP

#include <string>
#include <vector>

#include "telesurf/layout.hpp"
#include "telesurf/statevector.hpp"

namespace telesurf {

/// Error-injection knobs of the tunable transfer protocol.
struct TeleportConfig {
  double theta = 0;  // rotation polar angle of the error axis
  double phi = 0;    // azimuthal angle (kept 0 in sweeps)
  double t = 0;      // entangling detuning, in [0, pi/4]
  double p = 0;      // incoherent bit-flip rate on the sender, in [0, 1/2]

  void validate() const;
};

struct LogicalTarget {
  double theta_l = 0;
  double phi_l = 0;
};

/// cos(theta_l/2)|0_L> + e^{i phi_l} sin(theta_l/2)|1_L> on d^2 qubits,
/// built by projecting |0...0> into the code space. Dense, so d <= 3.
StateVector prepare_logical_state(int d, const LogicalTarget& target);

/// The transfer circuit factorizes over sender/receiver pairs. This holds
/// the per-pair unitary and the maps it induces on the received qubit.
///
/// Conventions (pinned by the exact-identity tests): the sender rotation is
/// Ry(-theta)Rz(-phi), the entangler exp(-i(pi/4 - t) XX), the feedback a
/// controlled-Y, and the receiver rotation Rz(phi)Ry(theta)S. With these, a
/// sender outcome string s leaves the receiver in the input state deformed
/// by prod_j exp(beta s_j sigma_j / 2) with tanh(beta) = sin(2t), where
/// sigma is the Bloch axis (theta, phi).
struct PairMaps {
  Eigen::Matrix4cd unitary;       // pair basis index = v_sender + 2*v_receiver
  Eigen::Matrix2cd bob_map[2];    // receiver map for sender outcome 0/1
  Eigen::RowVector2cd povm[2][2]; // full (sender, receiver) outcome functionals
};
PairMaps teleport_pair_maps(const TeleportConfig& cfg);

/// One named gate of the explicit circuit on 2d^2 qubits (sender qubit i at
/// index i, receiver partner at d^2 + i), in application order.
struct TeleportGate {
  std::string name;
  std::vector<int> qubits;
  Eigen::MatrixXcd matrix;  // 2x2 or 4x4
};
std::vector<TeleportGate> build_teleport_unitary(int d, const TeleportConfig& cfg);

/// Receiver state conditioned on a full sender outcome string (bit j =
/// outcome of sender qubit j). Returns the normalized state; *prob gets the
/// branch probability.
StateVector conditional_receiver_state(int d, const TeleportConfig& cfg,
                                       const LogicalTarget& target, uint64_t outcomes,
                                       double* prob = nullptr);

/// Compares every conditioned receiver state against the analytic
/// deformation of the input state. Returns the max infidelity over sampled
/// outcome strings; branches with probability below 1e-12 are skipped and
/// counted in *skipped.
double deformation_check(int d, const TeleportConfig& cfg, const LogicalTarget& target,
                         int n_outcomes, int* skipped = nullptr, uint64_t seed = 0);

/// Max-norm distance between the outcome-averaged single-pair channel and
/// the analytic dephasing channel for theta in {pi/2, pi/4}.
double twirl_check(double theta, double t);

struct BitstringBatch {
  int d = 0;
  TeleportConfig cfg;
  double theta_l = 0;
  uint64_t seed = 0;
  std::vector<BitVec> shots;  // receiver Z-basis readouts, layout index order
};

/// Monte-Carlo simulation of the full protocol: per shot, i.i.d. X errors at
/// rate p on the prepared sender state, Born sampling of all sender and
/// receiver readouts, keeping the receiver bits.
BitstringBatch sample_teleported_bitstrings(int d, const TeleportConfig& cfg,
                                            const LogicalTarget& target, uint64_t shots,
                                            uint64_t seed);

std::string bitstrings_to_text(const BitstringBatch& batch);
BitstringBatch bitstrings_from_text(const std::string& text);

}  // namespace telesurf

#endif  // TELESURF_TELEPORT_HPP
