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

#include "telesurf/tableau.hpp"

#include <stdexcept>

namespace telesurf {

namespace {

// Phase contribution of multiplying letter rows, summed mod 4 over words:
// +1 and -1 cases of the standard g function.
int g_sum(const BitVec& x1, const BitVec& z1, const BitVec& x2, const BitVec& z2) {
  int pos = 0, neg = 0;
  const auto &wx1 = x1.words(), &wz1 = z1.words(), &wx2 = x2.words(), &wz2 = z2.words();
  for (size_t w = 0; w < wx1.size(); ++w) {
    uint64_t a = wx1[w], b = wz1[w], c = wx2[w], d = wz2[w];
    uint64_t p = (a & b & d & ~c) | (a & ~b & c & d) | (~a & b & c & ~d);
    uint64_t m = (a & b & c & ~d) | (a & ~b & ~c & d) | (~a & b & c & d);
    pos += std::popcount(p);
    neg += std::popcount(m);
  }
  return ((pos - neg) % 4 + 4) % 4;
}

// letters-convention sign bit of a PauliString (i^k X^x Z^z form)
int letters_sign_bit(const PauliString& p) {
  size_t k = (p.phase + 4 - (p.y_count() & 3)) & 3;
  if (k & 1) throw std::invalid_argument("non-Hermitian Pauli");
  return k == 2 ? 1 : 0;
}

}  // namespace

Tableau::Tableau(int n) : n_(n) {
  xs_.assign(2 * n, BitVec(n));
  zs_.assign(2 * n, BitVec(n));
  r_.assign(2 * n, 0);
  for (int i = 0; i < n; ++i) {
    xs_[i].set(i, true);       // destabilizer X_i
    zs_[n + i].set(i, true);   // stabilizer Z_i
  }
}

void Tableau::apply_h(int q) {
  for (int i = 0; i < 2 * n_; ++i) {
    bool xq = xs_[i].get(q), zq = zs_[i].get(q);
    r_[i] ^= (xq && zq) ? 1 : 0;
    xs_[i].set(q, zq);
    zs_[i].set(q, xq);
  }
}

void Tableau::apply_x(int q) {
  for (int i = 0; i < 2 * n_; ++i) r_[i] ^= zs_[i].get(q) ? 1 : 0;
}

void Tableau::apply_z(int q) {
  for (int i = 0; i < 2 * n_; ++i) r_[i] ^= xs_[i].get(q) ? 1 : 0;
}

void Tableau::apply_cnot(int c, int t) {
  for (int i = 0; i < 2 * n_; ++i) {
    bool xc = xs_[i].get(c), zt = zs_[i].get(t);
    bool xt = xs_[i].get(t), zc = zs_[i].get(c);
    r_[i] ^= (xc && zt && (xt == zc)) ? 1 : 0;
    xs_[i].set(t, xt ^ xc);
    zs_[i].set(c, zc ^ zt);
  }
}

void Tableau::apply_swap(int a, int b) {
  for (int i = 0; i < 2 * n_; ++i) {
    bool xa = xs_[i].get(a), xb = xs_[i].get(b);
    xs_[i].set(a, xb);
    xs_[i].set(b, xa);
    bool za = zs_[i].get(a), zb = zs_[i].get(b);
    zs_[i].set(a, zb);
    zs_[i].set(b, za);
  }
}

void Tableau::apply_pauli(const PauliString& p) {
  // conjugation by a Pauli only flips row signs
  for (int i = 0; i < 2 * n_; ++i) {
    bool anti = xs_[i].and_parity(p.z) ^ zs_[i].and_parity(p.x);
    r_[i] ^= anti ? 1 : 0;
  }
}

bool Tableau::anticommutes(int row, const PauliString& p) const {
  return xs_[row].and_parity(p.z) ^ zs_[row].and_parity(p.x);
}

void Tableau::rowsum(int h, int i) {
  int phase = (2 * r_[h] + 2 * r_[i] + g_sum(xs_[i], zs_[i], xs_[h], zs_[h])) & 3;
  if (phase & 1) throw std::logic_error("tableau rowsum produced imaginary phase");
  r_[h] = static_cast<uint8_t>(phase >> 1);
  xs_[h] ^= xs_[i];
  zs_[h] ^= zs_[i];
}

void Tableau::rowsum_into(BitVec& ax, BitVec& az, int& ar, int i) const {
  int phase = (2 * ar + 2 * r_[i] + g_sum(xs_[i], zs_[i], ax, az)) & 3;
  if (phase & 1) throw std::logic_error("tableau rowsum produced imaginary phase");
  ar = phase >> 1;
  ax ^= xs_[i];
  az ^= zs_[i];
}

int Tableau::measure_z(int q, Rng& rng, bool* was_random) {
  PauliString zq(n_);
  zq.z.set(q, true);
  return measure_pauli(zq, rng, was_random);
}

int Tableau::measure_pauli(const PauliString& p, Rng& rng, bool* was_random) {
  int pivot = -1;
  for (int i = n_; i < 2 * n_; ++i) {
    if (anticommutes(i, p)) {
      pivot = i;
      break;
    }
  }
  if (pivot >= 0) {
    if (was_random) *was_random = true;
    for (int i = 0; i < 2 * n_; ++i)
      if (i != pivot && anticommutes(i, p)) rowsum(i, pivot);
    int outcome = rng.next_bool() ? 1 : 0;
    xs_[pivot - n_] = xs_[pivot];
    zs_[pivot - n_] = zs_[pivot];
    r_[pivot - n_] = r_[pivot];
    xs_[pivot] = p.x;
    zs_[pivot] = p.z;
    r_[pivot] = static_cast<uint8_t>(letters_sign_bit(p) ^ outcome);
    return outcome;
  }
  if (was_random) *was_random = false;
  BitVec ax(n_), az(n_);
  int ar = 0;
  for (int i = 0; i < n_; ++i)
    if (anticommutes(i, p)) rowsum_into(ax, az, ar, n_ + i);
  if (!(ax == p.x) || !(az == p.z))
    throw std::logic_error("deterministic measurement accumulation mismatch");
  return ar ^ letters_sign_bit(p);
}

int Tableau::pauli_expectation(const PauliString& p) const {
  for (int i = n_; i < 2 * n_; ++i)
    if (anticommutes(i, p)) return 0;
  BitVec ax(n_), az(n_);
  int ar = 0;
  for (int i = 0; i < n_; ++i)
    if (anticommutes(i, p)) rowsum_into(ax, az, ar, n_ + i);
  if (!(ax == p.x) || !(az == p.z))
    throw std::logic_error("pauli_expectation: operator not in stabilizer span");
  return (ar ^ letters_sign_bit(p)) ? -1 : 1;
}

PauliString Tableau::stabilizer(int i) const {
  PauliString p(n_);
  p.x = xs_[n_ + i];
  p.z = zs_[n_ + i];
  p.phase = static_cast<uint8_t>((2 * r_[n_ + i] + p.y_count()) & 3);
  return p;
}

PauliString Tableau::destabilizer(int i) const {
  PauliString p(n_);
  p.x = xs_[i];
  p.z = zs_[i];
  p.phase = static_cast<uint8_t>((2 * r_[i] + p.y_count()) & 3);
  return p;
}

std::vector<PauliString> Tableau::stabilizers() const {
  std::vector<PauliString> out;
  out.reserve(n_);
  for (int i = 0; i < n_; ++i) out.push_back(stabilizer(i));
  return out;
}

std::vector<PauliString> Tableau::canonical_stabilizers() const {
  return canonical_generators(stabilizers());
}

void Tableau::check_well_formed() const {
  for (int i = 0; i < 2 * n_; ++i) {
    PauliString pi = (i < n_) ? destabilizer(i) : stabilizer(i - n_);
    if (!pi.is_hermitian()) throw std::logic_error("tableau row not Hermitian");
  }
  for (int i = 0; i < n_; ++i) {
    PauliString si = stabilizer(i), di = destabilizer(i);
    for (int j = 0; j < n_; ++j) {
      PauliString sj = stabilizer(j), dj = destabilizer(j);
      if (!si.commutes_with(sj)) throw std::logic_error("stabilizers do not commute");
      if (!di.commutes_with(dj)) throw std::logic_error("destabilizers do not commute");
      bool anti = !di.commutes_with(sj);
      if (anti != (i == j)) throw std::logic_error("destabilizer pairing broken");
    }
  }
  // pairing implies full symplectic rank, so no extra rank check needed
}

std::vector<PauliString> canonical_generators(std::vector<PauliString> gens) {
  if (gens.empty()) return gens;
  const size_t n = gens[0].num_qubits();
  size_t pivot = 0;
  for (size_t pass = 0; pass < 2; ++pass) {
    for (size_t q = 0; q < n; ++q) {
      size_t found = SIZE_MAX;
      for (size_t i = pivot; i < gens.size(); ++i) {
        bool hit = pass == 0 ? gens[i].x.get(q) : (!gens[i].x.any() && gens[i].z.get(q));
        if (hit) {
          found = i;
          break;
        }
      }
      if (found == SIZE_MAX) continue;
      std::swap(gens[pivot], gens[found]);
      for (size_t i = 0; i < gens.size(); ++i) {
        if (i == pivot) continue;
        bool hit = pass == 0 ? gens[i].x.get(q) : gens[i].z.get(q);
        if (pass == 1 && gens[i].x.any() && i < pivot) continue;
        if (hit) gens[i] *= gens[pivot];
      }
      ++pivot;
    }
  }
  return gens;
}

}  // namespace telesurf
