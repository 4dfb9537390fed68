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

#ifndef TELESURF_PAULI_HPP
#define TELESURF_PAULI_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "telesurf/bitvec.hpp"

namespace telesurf {

/// n-qubit Pauli operator stored as i^phase * prod_j X^x_j Z^z_j.
struct PauliString {
  BitVec x;
  BitVec z;
  uint8_t phase = 0;  // exponent of i, mod 4

  PauliString() = default;
  explicit PauliString(size_t n) : x(n), z(n) {}

  size_t num_qubits() const { return x.size(); }

  static PauliString from_x_support(size_t n, const std::vector<int>& support) {
    PauliString p(n);
    for (int q : support) p.x.set(q, true);
    return p;
  }
  static PauliString from_z_support(size_t n, const std::vector<int>& support) {
    PauliString p(n);
    for (int q : support) p.z.set(q, true);
    return p;
  }

  PauliString& operator*=(const PauliString& o) {
    // Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1
    size_t swaps = 0;
    for (size_t w = 0; w < x.words().size(); ++w)
      swaps += std::popcount(z.words()[w] & o.x.words()[w]);
    phase = static_cast<uint8_t>((phase + o.phase + 2 * swaps) & 3);
    x ^= o.x;
    z ^= o.z;
    return *this;
  }
  friend PauliString operator*(PauliString a, const PauliString& b) { return a *= b; }

  bool commutes_with(const PauliString& o) const {
    return (x.and_parity(o.z) ^ z.and_parity(o.x)) == 0;
  }

  bool is_identity() const { return !x.any() && !z.any(); }

  /// Number of qubits with X and Z both set (letter Y).
  size_t y_count() const {
    size_t c = 0;
    for (size_t w = 0; w < x.words().size(); ++w)
      c += std::popcount(x.words()[w] & z.words()[w]);
    return c;
  }

  bool is_hermitian() const { return ((phase - y_count()) & 1) == 0; }

  /// +1 or -1 for Hermitian operators.
  int sign() const {
    size_t k = (phase + 4 - (y_count() & 3)) & 3;
    if (k & 1) throw std::logic_error("sign() on non-Hermitian Pauli");
    return k == 0 ? 1 : -1;
  }

  bool operator==(const PauliString& o) const {
    return x == o.x && z == o.z && phase == o.phase;
  }

  std::string to_string() const {
    std::string s = sign() > 0 ? "+" : "-";
    for (size_t i = 0; i < num_qubits(); ++i) {
      bool xi = x.get(i), zi = z.get(i);
      s += xi ? (zi ? 'Y' : 'X') : (zi ? 'Z' : 'I');
    }
    return s;
  }
};

/// Reduces a generating set to its canonical row-echelon form (X block first,
/// then Z block), multiplying rows so phases stay consistent. Two generating
/// sets produce identical output iff they generate the same signed group.
std::vector<PauliString> canonical_generators(std::vector<PauliString> gens);

}  // namespace telesurf

#endif  // TELESURF_PAULI_HPP
