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

#include "telesurf/prep.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace telesurf {

std::vector<PauliString> target_stabilizers(const CodeLayout& lay) {
  const size_t n = lay.num_qubits();
  std::vector<PauliString> gens;
  for (const auto& f : lay.z_faces) gens.push_back(PauliString::from_z_support(n, f.qubits));
  for (const auto& f : lay.x_faces) gens.push_back(PauliString::from_x_support(n, f.qubits));
  gens.push_back(PauliString::from_z_support(n, lay.logical_z));
  return gens;
}

std::vector<PauliString> embed_paulis(const std::vector<PauliString>& gens, int total_n,
                                      int offset) {
  std::vector<PauliString> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    PauliString p(total_n);
    for (size_t q = 0; q < g.num_qubits(); ++q) {
      if (g.x.get(q)) p.x.set(q + offset, true);
      if (g.z.get(q)) p.z.set(q + offset, true);
    }
    p.phase = g.phase;
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

struct TreeEdge {
  int control;
  int target;
  int layer;
};

struct FacePlan {
  int rep = -1;
  std::vector<TreeEdge> edges;
};

// Replays the CNOT schedule over GF(2) face labels and checks each face
// operator ends supported exactly on its own qubits, with no two gates
// sharing a qubit within one layer.
void verify_plans(const CodeLayout& lay, const std::vector<FacePlan>& plans) {
  const int n = lay.num_qubits();
  const size_t nf = lay.x_faces.size();
  std::vector<BitVec> label(n, BitVec(nf));
  std::vector<int> rep_seen(n, 0);
  for (size_t f = 0; f < nf; ++f) {
    label[plans[f].rep].set(f, true);
    if (rep_seen[plans[f].rep]++) throw std::logic_error("duplicate representative qubit");
  }
  std::vector<TreeEdge> all;
  for (const auto& p : plans) all.insert(all.end(), p.edges.begin(), p.edges.end());
  std::stable_sort(all.begin(), all.end(),
                   [](const TreeEdge& a, const TreeEdge& b) { return a.layer < b.layer; });
  int layer = 0;
  std::vector<int> busy(n, -1);
  for (const auto& e : all) {
    if (e.layer != layer) {
      layer = e.layer;
      std::fill(busy.begin(), busy.end(), -1);
    }
    if (busy[e.control] >= 0 || busy[e.target] >= 0)
      throw std::logic_error("overlapping gates in one preparation layer");
    busy[e.control] = busy[e.target] = 1;
    label[e.target] ^= label[e.control];
  }
  for (size_t f = 0; f < nf; ++f) {
    for (int q = 0; q < n; ++q) {
      bool want = std::find(lay.x_faces[f].qubits.begin(), lay.x_faces[f].qubits.end(), q) !=
                  lay.x_faces[f].qubits.end();
      if (label[q].get(f) != want)
        throw std::logic_error("preparation schedule spreads a face operator incorrectly");
    }
  }
}

/// Fixed d=3 schedule reproducing the reference layer-by-layer evolution.
std::vector<FacePlan> reference_d3_plans(const CodeLayout& lay) {
  auto plan_for = [&](const std::vector<int>& qubits) -> FacePlan {
    if (qubits == std::vector<int>{0, 1, 3, 4}) return {0, {{0, 3, 1}, {0, 1, 2}, {3, 4, 3}}};
    if (qubits == std::vector<int>{4, 5, 7, 8}) return {5, {{5, 8, 1}, {5, 4, 2}, {8, 7, 3}}};
    if (qubits == std::vector<int>{1, 2}) return {2, {{2, 1, 3}}};
    if (qubits == std::vector<int>{6, 7}) return {6, {{6, 7, 2}}};
    throw std::logic_error("unexpected d=3 face");
  };
  std::vector<FacePlan> plans;
  for (const auto& f : lay.x_faces) plans.push_back(plan_for(f.qubits));
  return plans;
}

/// Closed-form schedule for general d. Every face is a V-shaped tree rooted
/// at its top outer corner: the vertical edge fires at layer 1 and both
/// horizontal edges fire together in a per-column wave. Waves sweep from the
/// lattice edge inward; the two halves are staggered by one layer, so the
/// meeting column only ever receives leaf deliveries. Boundary faces ride
/// the wave of their column. Two-qubit depth = floor((d+3)/2) exactly.
std::vector<FacePlan> closed_form_plans(const CodeLayout& lay) {
  const int d = lay.distance;
  const int depth = (d + 3) / 2;
  auto qidx = [d](int r, int c) { return r * d + c; };

  // is_left: rooted at column c (top-left); otherwise rooted at c+1
  auto is_left = [&](int c) {
    return (d % 2 == 1) ? (c < (d - 1) / 2) : (c <= (d - 2) / 2);
  };
  auto wave_layer = [&](int c) -> int {
    if (d % 2 == 1) {
      const int mid = (d - 1) / 2;
      return (c < mid) ? depth - c : 2 + (c - mid);
    }
    const int cm = (d - 2) / 2;
    if (c < cm) return 3 + (cm - 1 - c);
    if (c == cm) return 2;
    return 3 + (c - cm - 1);
  };

  std::vector<FacePlan> plans;
  for (const auto& f : lay.x_faces) {
    const int c = f.cell_col;
    const int layer = wave_layer(c);
    FacePlan plan;
    if (f.weight() == 4) {
      const int r = f.cell_row;
      if (is_left(c)) {
        plan.rep = qidx(r, c);
        plan.edges = {{qidx(r, c), qidx(r + 1, c), 1},
                      {qidx(r, c), qidx(r, c + 1), layer},
                      {qidx(r + 1, c), qidx(r + 1, c + 1), layer}};
      } else {
        plan.rep = qidx(r, c + 1);
        plan.edges = {{qidx(r, c + 1), qidx(r + 1, c + 1), 1},
                      {qidx(r, c + 1), qidx(r, c), layer},
                      {qidx(r + 1, c + 1), qidx(r + 1, c), layer}};
      }
    } else {
      const int row = (f.cell_row < 0) ? 0 : d - 1;
      if (is_left(c)) {
        plan.rep = qidx(row, c);
        plan.edges = {{qidx(row, c), qidx(row, c + 1), layer}};
      } else {
        plan.rep = qidx(row, c + 1);
        plan.edges = {{qidx(row, c + 1), qidx(row, c), layer}};
      }
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

const std::vector<FacePlan>& cached_plans(int d) {
  static std::mutex mu;
  static std::map<int, std::vector<FacePlan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it == cache.end()) {
    CodeLayout lay = build_layout(d);
    auto plans = (d == 3) ? reference_d3_plans(lay) : closed_form_plans(lay);
    verify_plans(lay, plans);
    it = cache.emplace(d, std::move(plans)).first;
  }
  return it->second;
}

}  // namespace

CliffordCircuit build_prep_unitary(int d, bool mediated) {
  if (d < 2) throw std::invalid_argument("code distance must be at least 2");
  const auto& plans = cached_plans(d);
  const int n = d * d;
  const int depth = (d + 3) / 2;

  std::vector<Gate> h_layer;
  for (const auto& p : plans) h_layer.push_back({GateOp::H, p.rep});
  std::sort(h_layer.begin(), h_layer.end(), [](const Gate& a, const Gate& b) { return a.q0 < b.q0; });

  std::vector<std::vector<Gate>> cnot_layers(depth);
  for (const auto& p : plans)
    for (const auto& e : p.edges) cnot_layers[e.layer - 1].push_back({GateOp::CNOT, e.control, e.target});
  for (auto& l : cnot_layers)
    std::sort(l.begin(), l.end(), [](const Gate& a, const Gate& b) { return a.q0 < b.q0; });

  CliffordCircuit circ;
  if (!mediated) {
    circ.n = n;
    circ.append_layer(std::move(h_layer));
    for (auto& l : cnot_layers) circ.append_layer(std::move(l));
  } else {
    // route each CNOT through the mediator register: CNOT(c,m) CNOT(m,t) CNOT(c,m)
    circ.n = 2 * n;
    circ.append_layer(std::move(h_layer));
    for (const auto& l : cnot_layers) {
      std::vector<Gate> first, second, third;
      for (const auto& g : l) {
        int m = n + g.q0;
        first.push_back({GateOp::CNOT, g.q0, m});
        second.push_back({GateOp::CNOT, m, g.q1});
        third.push_back({GateOp::CNOT, g.q0, m});
      }
      circ.append_layer(std::move(first));
      circ.append_layer(std::move(second));
      circ.append_layer(std::move(third));
    }
  }
  circ.validate();
  return circ;
}

CliffordCircuit build_prep_dual(int d) {
  if (d < 2) throw std::invalid_argument("code distance must be at least 2");
  CliffordCircuit base = build_prep_unitary(d, false);
  const int n = d * d;
  CliffordCircuit circ;
  circ.n = 2 * n;

  std::vector<Gate> h_layer;
  for (const auto& g : base.layers[0]) {
    h_layer.push_back({GateOp::H, g.q0});
    h_layer.push_back({GateOp::H, g.q0 + n});
  }
  std::sort(h_layer.begin(), h_layer.end(), [](const Gate& a, const Gate& b) { return a.q0 < b.q0; });
  circ.append_layer(std::move(h_layer));

  auto swap_layers = [&](const std::vector<Gate>& cnots) {
    // SWAP(t, n+t) for every gate target, compiled as three CNOT layers
    std::vector<Gate> a, b;
    for (const auto& g : cnots) {
      a.push_back({GateOp::CNOT, g.q1, g.q1 + n});
      b.push_back({GateOp::CNOT, g.q1 + n, g.q1});
    }
    circ.append_layer(a);
    circ.append_layer(b);
    circ.append_layer(a);
  };

  for (size_t l = 1; l < base.layers.size(); ++l) {
    const auto& cnots = base.layers[l];
    circ.append_layer(cnots);  // home lattice gates act directly
    swap_layers(cnots);        // bring counterpart targets into reach
    std::vector<Gate> partner;
    for (const auto& g : cnots) partner.push_back({GateOp::CNOT, g.q0 + n, g.q1});
    circ.append_layer(std::move(partner));
    swap_layers(cnots);        // return everyone home
  }
  circ.validate();
  return circ;
}

MeasurementPrep build_prep_measurement(int d, Rng& rng) {
  if (d < 2) throw std::invalid_argument("code distance must be at least 2");
  CodeLayout lay = build_layout(d);
  const int n = lay.num_qubits();
  Tableau tab = Tableau::zero_state(n);

  MeasurementPrep out{std::move(tab), {}, {}};
  out.frame.x_correction = BitVec(n);
  out.frame.z_correction = BitVec(n);
  out.frame.face_flips = BitVec(lay.x_faces.size());

  for (size_t f = 0; f < lay.x_faces.size(); ++f) {
    PauliString p = PauliString::from_x_support(n, lay.x_faces[f].qubits);
    int outcome = out.tableau.measure_pauli(p, rng);
    out.outcomes.push_back(outcome);
    if (outcome) out.frame.face_flips.set(f, true);
  }

  // Flip -1 faces back with Z strings running to the lattice edge: such a
  // string anticommutes with its endpoint face only and commutes with the
  // rest of the target group.
  for (size_t f = 0; f < lay.x_faces.size(); ++f) {
    if (!out.frame.face_flips.get(f)) continue;
    // BFS over X faces; qubits contained in a single X face exit to the edge.
    std::vector<int> parent_face(lay.x_faces.size(), -2);
    std::vector<int> parent_qubit(lay.x_faces.size(), -1);
    parent_face[f] = -1;
    std::queue<int> bfs;
    bfs.push(static_cast<int>(f));
    int exit_face = -1, exit_qubit = -1;
    while (!bfs.empty() && exit_face < 0) {
      int cur = bfs.front();
      bfs.pop();
      for (int q : lay.x_faces[cur].qubits) {
        const auto& owners = lay.qubit_to_x[q];
        if (owners.size() == 1) {
          exit_face = cur;
          exit_qubit = q;
          break;
        }
        for (int nf : owners) {
          if (nf == cur || parent_face[nf] != -2) continue;
          parent_face[nf] = cur;
          parent_qubit[nf] = q;
          bfs.push(nf);
        }
      }
    }
    if (exit_face < 0) throw std::logic_error("no boundary exit for frame correction");
    out.frame.z_correction.flip(exit_qubit);
    for (int cur = exit_face; parent_face[cur] >= 0; cur = parent_face[cur])
      out.frame.z_correction.flip(parent_qubit[cur]);
  }

  for (int q = 0; q < n; ++q) {
    if (out.frame.z_correction.get(q)) out.tableau.apply_z(q);
    if (out.frame.x_correction.get(q)) out.tableau.apply_x(q);
  }
  return out;
}

}  // namespace telesurf
