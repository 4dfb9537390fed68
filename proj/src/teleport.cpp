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

#include "telesurf/teleport.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "telesurf/parallel.hpp"

namespace telesurf {

using gates::cd;
using Eigen::Matrix2cd;
using Eigen::Matrix4cd;

namespace {

constexpr double kPi = std::numbers::pi;

/// Bloch axis sin(th)cos(ph) X + sin(th)sin(ph) Y + cos(th) Z.
Matrix2cd bloch_axis(double theta, double phi) {
  return std::sin(theta) * std::cos(phi) * gates::pauli_x() +
         std::sin(theta) * std::sin(phi) * gates::pauli_y() +
         std::cos(theta) * gates::pauli_z();
}

/// kron with `hi` on pair bit 1 and `lo` on pair bit 0.
Matrix4cd kron2(const Matrix2cd& hi, const Matrix2cd& lo) {
  Matrix4cd m;
  for (int rh = 0; rh < 2; ++rh)
    for (int rl = 0; rl < 2; ++rl)
      for (int ch = 0; ch < 2; ++ch)
        for (int cl = 0; cl < 2; ++cl) m(2 * rh + rl, 2 * ch + cl) = hi(rh, ch) * lo(rl, cl);
  return m;
}

/// Controlled-U with control on pair bit 0 (sender), target bit 1 (receiver).
Matrix4cd controlled_on_bit0(const Matrix2cd& u) {
  Matrix4cd m = Matrix4cd::Identity();
  // states |v1 v0>: control v0 = 1 -> apply u on v1
  m(1, 1) = u(0, 0);
  m(1, 3) = u(0, 1);
  m(3, 1) = u(1, 0);
  m(3, 3) = u(1, 1);
  return m;
}

StateVector logical_zero(int d) {
  CodeLayout lay = build_layout(d);
  const int n = lay.num_qubits();
  StateVector s = StateVector::zero_state(n);
  for (const auto& f : lay.x_faces) {
    PauliString b = PauliString::from_x_support(n, f.qubits);
    StateVector t = s;
    apply_pauli(t, b);
    s.amps += t.amps;
  }
  s.normalize();
  return s;
}

}  // namespace

void TeleportConfig::validate() const {
  if (t < -1e-12 || t > kPi / 4 + 1e-12)
    throw std::invalid_argument("entangling detuning t must lie in [0, pi/4]");
  if (p < 0 || p > 0.5) throw std::invalid_argument("bit-flip rate p must lie in [0, 1/2]");
}

StateVector prepare_logical_state(int d, const LogicalTarget& target) {
  if (d > 3) throw std::invalid_argument("dense logical-state preparation supports d <= 3");
  CodeLayout lay = build_layout(d);
  StateVector zero = logical_zero(d);
  StateVector one = zero;
  apply_pauli(one, PauliString::from_x_support(lay.num_qubits(), lay.logical_x));
  StateVector out = zero;
  out.amps = std::cos(target.theta_l / 2) * zero.amps +
             std::exp(cd(0, target.phi_l)) * std::sin(target.theta_l / 2) * one.amps;
  return out;
}

PairMaps teleport_pair_maps(const TeleportConfig& cfg) {
  cfg.validate();
  const Matrix2cd sender_rot = gates::ry(-cfg.theta) * gates::rz(-cfg.phi);
  const Matrix4cd entangler = gates::rxx(kPi / 2 - 2 * cfg.t);
  const Matrix4cd feedback = controlled_on_bit0(gates::pauli_y());
  const Matrix2cd receiver_rot = gates::rz(cfg.phi) * gates::ry(cfg.theta) * gates::phase_s();

  PairMaps maps;
  maps.unitary = kron2(receiver_rot, gates::identity2()) * feedback * entangler *
                 kron2(gates::identity2(), sender_rot);
  for (int a = 0; a < 2; ++a) {
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) maps.bob_map[a](r, c) = maps.unitary(a + 2 * r, c);
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) maps.povm[a][b](c) = maps.unitary(a + 2 * b, c);
  }
  return maps;
}

std::vector<TeleportGate> build_teleport_unitary(int d, const TeleportConfig& cfg) {
  if (d > 3) throw std::invalid_argument("dense oracle supports d <= 3");
  cfg.validate();
  const int n = d * d;
  std::vector<TeleportGate> prog;
  for (int j = 0; j < n; ++j)
    prog.push_back({"sender_rot", {j}, gates::ry(-cfg.theta) * gates::rz(-cfg.phi)});
  for (int j = 0; j < n; ++j)
    prog.push_back({"rxx", {j, n + j}, gates::rxx(kPi / 2 - 2 * cfg.t)});
  for (int j = 0; j < n; ++j)
    prog.push_back({"feedback_cy", {j, n + j}, controlled_on_bit0(gates::pauli_y())});
  for (int j = 0; j < n; ++j)
    prog.push_back(
        {"receiver_rot", {n + j}, gates::rz(cfg.phi) * gates::ry(cfg.theta) * gates::phase_s()});
  return prog;
}

StateVector conditional_receiver_state(int d, const TeleportConfig& cfg,
                                       const LogicalTarget& target, uint64_t outcomes,
                                       double* prob) {
  PairMaps maps = teleport_pair_maps(cfg);
  StateVector s = prepare_logical_state(d, target);
  const int n = d * d;
  for (int j = 0; j < n; ++j) apply_1q(s, j, maps.bob_map[(outcomes >> j) & 1]);
  double p = s.amps.squaredNorm();
  if (prob) *prob = p;
  if (p > 0) s.amps /= std::sqrt(p);
  return s;
}

double deformation_check(int d, const TeleportConfig& cfg, const LogicalTarget& target,
                         int n_outcomes, int* skipped, uint64_t seed) {
  cfg.validate();
  const int n = d * d;
  const double beta = std::atanh(std::min(1.0, std::sin(2 * cfg.t)));
  Matrix2cd deform[2];
  const Matrix2cd axis = bloch_axis(cfg.theta, cfg.phi);
  if (std::isinf(beta)) {
    deform[0] = (gates::identity2() + axis) / 2;  // outcome 0 <-> s_z = +1
    deform[1] = (gates::identity2() - axis) / 2;
  } else {
    deform[0] = std::cosh(beta / 2) * gates::identity2() + std::sinh(beta / 2) * axis;
    deform[1] = std::cosh(beta / 2) * gates::identity2() - std::sinh(beta / 2) * axis;
  }

  StateVector input = prepare_logical_state(d, target);
  const uint64_t total = uint64_t{1} << n;
  const bool exhaustive = static_cast<uint64_t>(n_outcomes) >= total;
  const uint64_t count = exhaustive ? total : static_cast<uint64_t>(n_outcomes);

  Rng rng(seed);
  double worst = 0;
  int skip = 0;
  for (uint64_t k = 0; k < count; ++k) {
    uint64_t s = exhaustive ? k : (rng.next_u64() & (total - 1));
    double prob = 0;
    StateVector got = conditional_receiver_state(d, cfg, target, s, &prob);
    if (prob < 1e-12) {
      ++skip;
      continue;
    }
    StateVector want = input;
    for (int j = 0; j < n; ++j) apply_1q(want, j, deform[(s >> j) & 1]);
    want.normalize();
    worst = std::max(worst, 1.0 - fidelity(got, want));
  }
  if (skipped) *skipped = skip;
  return worst;
}

double twirl_check(double theta, double t) {
  Matrix2cd axis;
  if (std::abs(theta - kPi / 2) < 1e-9) {
    axis = gates::pauli_x();
  } else if (std::abs(theta - kPi / 4) < 1e-9) {
    axis = (gates::pauli_x() + gates::pauli_z()) / std::sqrt(2.0);
  } else {
    throw std::invalid_argument("twirl_check supports theta = pi/2 or pi/4");
  }
  TeleportConfig cfg{theta, 0, t, 0};
  PairMaps maps = teleport_pair_maps(cfg);
  const double c2 = std::cos(t) * std::cos(t), s2 = std::sin(t) * std::sin(t);
  double dist = 0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      Matrix2cd rho = Matrix2cd::Zero();
      rho(r, c) = 1;
      Matrix2cd got = maps.bob_map[0] * rho * maps.bob_map[0].adjoint() +
                      maps.bob_map[1] * rho * maps.bob_map[1].adjoint();
      Matrix2cd want = c2 * rho + s2 * axis * rho * axis;
      dist = std::max(dist, (got - want).cwiseAbs().maxCoeff());
    }
  }
  return dist;
}

BitstringBatch sample_teleported_bitstrings(int d, const TeleportConfig& cfg,
                                            const LogicalTarget& target, uint64_t shots,
                                            uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  cfg.validate();
  const int n = d * d;
  const PairMaps maps = teleport_pair_maps(cfg);
  const StateVector base = prepare_logical_state(d, target);
  const int64_t dim = base.amps.size();

  BitstringBatch batch{d, cfg, target.theta_l, seed, std::vector<BitVec>(shots)};
  parallel_for(shots, [&](uint64_t shot) {
    Rng rng(seed, shot);
    uint64_t err = 0;
    for (int j = 0; j < n; ++j)
      if (rng.bernoulli(cfg.p)) err |= uint64_t{1} << j;

    Eigen::VectorXcd amps(dim);
    for (int64_t i = 0; i < dim; ++i) amps[i] = base.amps[static_cast<int64_t>(i ^ err)];

    BitVec receiver(n);
    for (int j = 0; j < n; ++j) {
      const int64_t stride = int64_t{1} << j;
      double w[4] = {0, 0, 0, 0};
      for (int64_t base_i = 0; base_i < dim; base_i += 2 * stride) {
        for (int64_t i = base_i; i < base_i + stride; ++i) {
          cd a0 = amps[i], a1 = amps[i + stride];
          for (int o = 0; o < 4; ++o) {
            const auto& m = maps.povm[o & 1][o >> 1];
            w[o] += std::norm(m(0) * a0 + m(1) * a1);
          }
        }
      }
      double u = rng.next_double() * (w[0] + w[1] + w[2] + w[3]);
      int pick = 0;
      double acc = w[0];
      while (pick < 3 && u >= acc) acc += w[++pick];
      const auto& m = maps.povm[pick & 1][pick >> 1];
      const double inv = 1.0 / std::sqrt(w[pick]);
      for (int64_t base_i = 0; base_i < dim; base_i += 2 * stride) {
        for (int64_t i = base_i; i < base_i + stride; ++i) {
          amps[i] = (m(0) * amps[i] + m(1) * amps[i + stride]) * inv;
          amps[i + stride] = 0;
        }
      }
      if (pick >> 1) receiver.set(j, true);
    }
    batch.shots[shot] = std::move(receiver);
  });
  return batch;
}

std::string bitstrings_to_text(const BitstringBatch& batch) {
  std::ostringstream out;
  out << "# d=" << batch.d << " theta=" << batch.cfg.theta << " phi=" << batch.cfg.phi
      << " t=" << batch.cfg.t << " p=" << batch.cfg.p << " theta_l=" << batch.theta_l
      << " seed=" << batch.seed << "\n";
  for (const auto& s : batch.shots) out << s.to_string() << "\n";
  return out.str();
}

BitstringBatch bitstrings_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.empty() || line[0] != '#')
    throw std::invalid_argument("missing bitstring header line");
  BitstringBatch batch;
  std::istringstream hs(line.substr(1));
  std::string tok;
  while (hs >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    std::string key = tok.substr(0, eq);
    double val = std::stod(tok.substr(eq + 1));
    if (key == "d") batch.d = static_cast<int>(val);
    else if (key == "theta") batch.cfg.theta = val;
    else if (key == "phi") batch.cfg.phi = val;
    else if (key == "t") batch.cfg.t = val;
    else if (key == "p") batch.cfg.p = val;
    else if (key == "theta_l") batch.theta_l = val;
    else if (key == "seed") batch.seed = static_cast<uint64_t>(val);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    batch.shots.push_back(BitVec::from_string(line));
  }
  return batch;
}

}  // namespace telesurf
