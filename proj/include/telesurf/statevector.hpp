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

#ifndef TELESURF_STATEVECTOR_HPP
#define TELESURF_STATEVECTOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "telesurf/pauli.hpp"
#include "telesurf/rng.hpp"

namespace telesurf {

/// Dense n-qubit state. Qubit q is bit q of the amplitude index
/// (little-endian), so |...q1 q0> has index q0 + 2*q1 + ...
struct StateVector {
  int n = 0;
  Eigen::VectorXcd amps;

  static StateVector zero_state(int n) {
    StateVector s{n, Eigen::VectorXcd::Zero(int64_t{1} << n)};
    s.amps[0] = 1.0;
    return s;
  }
  double norm() const { return amps.norm(); }
  void normalize() { amps /= amps.norm(); }
};

namespace gates {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using cd = std::complex<double>;

inline Matrix2cd identity2() { return Matrix2cd::Identity(); }
inline Matrix2cd pauli_x() { return (Matrix2cd() << 0, 1, 1, 0).finished(); }
inline Matrix2cd pauli_y() { return (Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished(); }
inline Matrix2cd pauli_z() { return (Matrix2cd() << 1, 0, 0, -1).finished(); }
inline Matrix2cd hadamard() {
  return (Matrix2cd() << 1, 1, 1, -1).finished() / std::sqrt(2.0);
}
inline Matrix2cd phase_s() { return (Matrix2cd() << 1, 0, 0, cd(0, 1)).finished(); }
inline Matrix2cd ry(double theta) {
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return (Matrix2cd() << c, -s, s, c).finished();
}
inline Matrix2cd rz(double theta) {
  return (Matrix2cd() << std::exp(cd(0, -theta / 2)), 0, 0, std::exp(cd(0, theta / 2)))
      .finished();
}

/// exp(-i alpha X(x)X / 2), basis |v1 v0> with index 2*v1 + v0.
inline Matrix4cd rxx(double alpha) {
  double c = std::cos(alpha / 2), s = std::sin(alpha / 2);
  Matrix4cd m = Matrix4cd::Identity() * c;
  cd ms(0, -s);
  m(0, 3) = ms;
  m(1, 2) = ms;
  m(2, 1) = ms;
  m(3, 0) = ms;
  return m;
}

inline Matrix4cd cz() {
  Matrix4cd m = Matrix4cd::Identity();
  m(3, 3) = -1;
  return m;
}

/// Control = bit 0 of the pair index, target = bit 1.
inline Matrix4cd cnot() {
  Matrix4cd m = Matrix4cd::Zero();
  m(0, 0) = m(2, 2) = 1;  // control 0
  m(3, 1) = m(1, 3) = 1;  // control 1 flips target
  return m;
}

}  // namespace gates

void apply_1q(StateVector& s, int q, const Eigen::Matrix2cd& u);

/// Applies a 4x4 operator; pair basis index = v(qa) + 2*v(qb).
void apply_2q(StateVector& s, int qa, int qb, const Eigen::Matrix4cd& u);

void apply_pauli(StateVector& s, const PauliString& p);

std::complex<double> inner(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);

std::complex<double> pauli_expectation(const StateVector& s, const PauliString& p);

/// Samples a full Z-basis readout from the Born rule.
uint64_t sample_z_basis(const StateVector& s, Rng& rng);

// --- density-matrix helpers for the small oracles ---

Eigen::MatrixXcd density_from_state(const StateVector& s);

/// rho -> sum_k (K_k on qubit q) rho (K_k on qubit q)^dagger
void apply_1q_channel(Eigen::MatrixXcd& rho, int n, int q,
                      const std::vector<Eigen::Matrix2cd>& kraus);

double overlap_trace(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace telesurf

#endif  // TELESURF_STATEVECTOR_HPP
