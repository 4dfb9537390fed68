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

#ifndef TELESURF_TABLEAU_HPP
#define TELESURF_TABLEAU_HPP

#include <vector>

#include "telesurf/pauli.hpp"
#include "telesurf/rng.hpp"

namespace telesurf {

/// Stabilizer tableau in the destabilizer/stabilizer form, bit-packed with
/// word XOR/AND kernels. Rows 0..n-1 are destabilizers, n..2n-1 stabilizers.
class Tableau {
 public:
  explicit Tableau(int n);

  static Tableau zero_state(int n) { return Tableau(n); }

  int num_qubits() const { return n_; }

  void apply_h(int q);
  void apply_x(int q);
  void apply_z(int q);
  void apply_cnot(int c, int t);
  void apply_swap(int a, int b);
  void apply_pauli(const PauliString& p);

  /// Measures Z on qubit q. The outcome is random (fair coin from rng) when
  /// Z_q anticommutes with a stabilizer, deterministic otherwise.
  int measure_z(int q, Rng& rng, bool* was_random = nullptr);

  /// Measures an arbitrary Hermitian Pauli operator.
  int measure_pauli(const PauliString& p, Rng& rng, bool* was_random = nullptr);

  PauliString stabilizer(int i) const;
  PauliString destabilizer(int i) const;
  std::vector<PauliString> stabilizers() const;

  /// Canonical form of the stabilizer group, for group-equality checks.
  std::vector<PauliString> canonical_stabilizers() const;

  /// Expectation of a Hermitian Pauli: +1/-1 if determined, 0 if random.
  int pauli_expectation(const PauliString& p) const;

  /// Verifies the symplectic structure (commutation and rank). Throws
  /// std::logic_error when violated; used by tests after every layer.
  void check_well_formed() const;

 private:
  int n_;
  // Letters convention: row operator = (-1)^r * product of I/X/Y/Z letters.
  std::vector<BitVec> xs_, zs_;
  std::vector<uint8_t> r_;

  bool anticommutes(int row, const PauliString& p) const;
  void rowsum(int h, int i);
  // rowsum into an external accumulator row
  void rowsum_into(BitVec& ax, BitVec& az, int& ar, int i) const;
};

}  // namespace telesurf

#endif  // TELESURF_TABLEAU_HPP
