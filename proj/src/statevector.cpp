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

#include "telesurf/statevector.hpp"

#include <stdexcept>

namespace telesurf {

using cd = std::complex<double>;

void apply_1q(StateVector& s, int q, const Eigen::Matrix2cd& u) {
  const int64_t stride = int64_t{1} << q;
  const int64_t dim = s.amps.size();
  for (int64_t base = 0; base < dim; base += 2 * stride) {
    for (int64_t i = base; i < base + stride; ++i) {
      cd a0 = s.amps[i], a1 = s.amps[i + stride];
      s.amps[i] = u(0, 0) * a0 + u(0, 1) * a1;
      s.amps[i + stride] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

void apply_2q(StateVector& s, int qa, int qb, const Eigen::Matrix4cd& u) {
  if (qa == qb) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  const int64_t sa = int64_t{1} << qa, sb = int64_t{1} << qb;
  const int64_t dim = s.amps.size();
  for (int64_t i = 0; i < dim; ++i) {
    if ((i & sa) || (i & sb)) continue;
    int64_t i00 = i, i01 = i | sa, i10 = i | sb, i11 = i | sa | sb;
    Eigen::Vector4cd v{s.amps[i00], s.amps[i01], s.amps[i10], s.amps[i11]};
    Eigen::Vector4cd w = u * v;
    s.amps[i00] = w[0];
    s.amps[i01] = w[1];
    s.amps[i10] = w[2];
    s.amps[i11] = w[3];
  }
}

void apply_pauli(StateVector& s, const PauliString& p) {
  if (static_cast<int>(p.num_qubits()) != s.n)
    throw std::invalid_argument("pauli/state size mismatch");
  uint64_t xmask = 0, zmask = 0;
  for (int q = 0; q < s.n; ++q) {
    if (p.x.get(q)) xmask |= uint64_t{1} << q;
    if (p.z.get(q)) zmask |= uint64_t{1} << q;
  }
  static const cd ipow[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
  // i^phase * X^x Z^z acting on |b> = i^phase * (-1)^{|z&b|} |b^x>
  const cd pref = ipow[p.phase & 3];
  Eigen::VectorXcd out(s.amps.size());
  for (int64_t b = 0; b < s.amps.size(); ++b) {
    cd v = s.amps[b] * pref;
    if (std::popcount(static_cast<uint64_t>(b) & zmask) & 1) v = -v;
    out[b ^ xmask] = v;
  }
  s.amps = std::move(out);
}

cd inner(const StateVector& a, const StateVector& b) { return a.amps.dot(b.amps); }

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner(a, b));
}

cd pauli_expectation(const StateVector& s, const PauliString& p) {
  StateVector t = s;
  apply_pauli(t, p);
  return inner(s, t);
}

uint64_t sample_z_basis(const StateVector& s, Rng& rng) {
  double u = rng.next_double() * s.amps.squaredNorm();
  double acc = 0;
  for (int64_t i = 0; i < s.amps.size(); ++i) {
    acc += std::norm(s.amps[i]);
    if (u < acc) return static_cast<uint64_t>(i);
  }
  return static_cast<uint64_t>(s.amps.size() - 1);
}

Eigen::MatrixXcd density_from_state(const StateVector& s) {
  return s.amps * s.amps.adjoint();
}

void apply_1q_channel(Eigen::MatrixXcd& rho, int n, int q,
                      const std::vector<Eigen::Matrix2cd>& kraus) {
  const int64_t dim = int64_t{1} << n;
  if (rho.rows() != dim) throw std::invalid_argument("density matrix dimension mismatch");
  const int64_t stride = int64_t{1} << q;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& k : kraus) {
    Eigen::MatrixXcd tmp = rho;
    // left multiply: rows
    for (int64_t c = 0; c < dim; ++c) {
      for (int64_t r = 0; r < dim; ++r) {
        if (r & stride) continue;
        cd a0 = tmp(r, c), a1 = tmp(r | stride, c);
        tmp(r, c) = k(0, 0) * a0 + k(0, 1) * a1;
        tmp(r | stride, c) = k(1, 0) * a0 + k(1, 1) * a1;
      }
    }
    // right multiply by k^dagger: columns
    for (int64_t r = 0; r < dim; ++r) {
      for (int64_t c = 0; c < dim; ++c) {
        if (c & stride) continue;
        cd a0 = tmp(r, c), a1 = tmp(r, c | stride);
        tmp(r, c) = a0 * std::conj(k(0, 0)) + a1 * std::conj(k(0, 1));
        tmp(r, c | stride) = a0 * std::conj(k(1, 0)) + a1 * std::conj(k(1, 1));
      }
    }
    out += tmp;
  }
  rho = std::move(out);
}

double overlap_trace(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a * b).trace().real();
}

}  // namespace telesurf
