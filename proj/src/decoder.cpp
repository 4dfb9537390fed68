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

#include "telesurf/decoder.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "telesurf/coset_transfer.hpp"
#include "telesurf/matching.hpp"

namespace telesurf {

namespace {

constexpr int kUnreachable = 1 << 20;

DefectGraph build_defect_graph(const CodeLayout& lay) {
  DefectGraph g;
  const int nf = static_cast<int>(lay.z_faces.size());
  g.n_faces = nf;
  const int boundary = nf;  // virtual node

  // adjacency: qubits shared by two Z faces are internal edges, qubits owned
  // by a single Z face lead to the boundary
  std::vector<std::vector<std::pair<int, int>>> adj(nf + 1);  // (node, qubit)
  for (int q = 0; q < lay.num_qubits(); ++q) {
    const auto& owners = lay.qubit_to_z[q];
    if (owners.size() == 2) {
      adj[owners[0]].push_back({owners[1], q});
      adj[owners[1]].push_back({owners[0], q});
    } else if (owners.size() == 1) {
      adj[owners[0]].push_back({boundary, q});
    }
  }

  g.dist.assign(nf, std::vector<int>(nf, 0));
  g.boundary_dist.assign(nf, 0);
  g.chain.assign(static_cast<size_t>(nf) * nf, {});
  g.boundary_chain.assign(nf, {});

  for (int src = 0; src < nf; ++src) {
    std::vector<int> dist(nf + 1, -1), par_node(nf + 1, -1), par_qubit(nf + 1, -1);
    std::queue<int> bfs;
    dist[src] = 0;
    bfs.push(src);
    while (!bfs.empty()) {
      int cur = bfs.front();
      bfs.pop();
      if (cur == boundary) continue;  // boundary absorbs
      for (auto [next, q] : adj[cur]) {
        if (dist[next] != -1) continue;
        dist[next] = dist[cur] + 1;
        par_node[next] = cur;
        par_qubit[next] = q;
        bfs.push(next);
      }
    }
    auto walk = [&](int node) {
      std::vector<int> qubits;
      for (int cur = node; cur != src; cur = par_node[cur]) qubits.push_back(par_qubit[cur]);
      return qubits;
    };
    for (int f = 0; f < nf; ++f) {
      if (dist[f] < 0) {
        // faces connected only through the boundary (d=2): pairing them
        // directly is never cheaper than two boundary chains
        g.dist[src][f] = kUnreachable;
        continue;
      }
      g.dist[src][f] = dist[f];
      g.chain[static_cast<size_t>(src) * nf + f] = walk(f);
    }
    if (dist[boundary] < 0) throw std::logic_error("no boundary reachable");
    g.boundary_dist[src] = dist[boundary];
    g.boundary_chain[src] = walk(boundary);
  }
  return g;
}

struct LayoutAux {
  CodeLayout layout;
  DefectGraph graph;
  CosetTransfer transfer;

  explicit LayoutAux(const CodeLayout& lay)
      : layout(lay), graph(build_defect_graph(lay)), transfer(lay) {}
};

const LayoutAux& aux_for(const CodeLayout& lay) {
  static std::mutex mu;
  static std::map<int, LayoutAux> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(lay.distance);
  if (it == cache.end()) it = cache.emplace(lay.distance, LayoutAux(lay)).first;
  return it->second;
}

void check_q_open_interval(double q) {
  if (!(q > 0) || !(q < 0.5))
    throw std::invalid_argument("coset decoding needs q in the open interval (0, 1/2)");
}

ErrorPattern reference_from_syndrome(const CodeLayout& lay, const DefectGraph& g,
                                     const Syndrome& syndrome) {
  if (syndrome.size() != lay.z_faces.size())
    throw std::invalid_argument("syndrome length mismatch");
  ErrorPattern ref(lay.num_qubits());
  for (size_t f = 0; f < lay.z_faces.size(); ++f)
    if (syndrome.get(f))
      for (int q : g.boundary_chain[f]) ref.flip(q);
  return ref;
}

}  // namespace

const DefectGraph& DefectGraph::of(const CodeLayout& layout) { return aux_for(layout).graph; }

DecodeResult decode_mwpm(const CodeLayout& lay, const Syndrome& syndrome, double q) {
  (void)q;  // matching weights are chain lengths; q only sets the noise model
  if (syndrome.size() != lay.z_faces.size())
    throw std::invalid_argument("syndrome length mismatch");
  const auto& aux = aux_for(lay);
  const auto defects64 = syndrome.ones();
  std::vector<int> defects(defects64.begin(), defects64.end());
  const int k = static_cast<int>(defects.size());

  DecodeResult res;
  res.correction = ErrorPattern(lay.num_qubits());
  res.log_likelihoods = {std::nan(""), std::nan("")};
  res.matching_weight = 0;
  if (k == 0) return res;

  // nodes 0..k-1 defects, k..2k-1 dedicated virtual boundary nodes
  const int n = 2 * k;
  constexpr int64_t kScale = int64_t{1} << 23;
  constexpr int64_t kForbid = int64_t{1} << 50;
  auto pert = [n](int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<int64_t>(u) * n + v;
  };
  std::vector<std::vector<int64_t>> costs(n, std::vector<int64_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int64_t c;
      if (i < k && j < k) {
        c = kScale * aux.graph.dist[defects[i]][defects[j]] + pert(i, j);
      } else if (i < k && j == k + i) {
        c = kScale * aux.graph.boundary_dist[defects[i]] + pert(i, j);
      } else if (i >= k && j >= k) {
        c = pert(i, j);  // virtual-virtual edges carry weight 0
      } else {
        c = kForbid;
      }
      costs[i][j] = costs[j][i] = c;
    }
  }
  std::vector<int> mate = min_weight_perfect_matching(costs);
  for (int i = 0; i < k; ++i) {
    int j = mate[i];
    if (j < 0 || (j >= k && j != k + i))
      throw std::logic_error("matching used a forbidden virtual pairing");
    if (j == k + i) {
      res.matching_weight += aux.graph.boundary_dist[defects[i]];
      for (int qb : aux.graph.boundary_chain[defects[i]]) res.correction.flip(qb);
    } else if (j > i) {
      res.matching_weight += aux.graph.dist[defects[i]][defects[j]];
      const auto& chain =
          aux.graph.chain[static_cast<size_t>(defects[i]) * aux.graph.n_faces + defects[j]];
      for (int qb : chain) res.correction.flip(qb);
    }
  }
  res.logical_flip = logical_parity(lay, res.correction);
  return res;
}

DecodeResult decode_coset_ml(const CodeLayout& lay, const BitVec& syndrome_or_reference,
                             double q) {
  check_q_open_interval(q);
  const auto& aux = aux_for(lay);
  ErrorPattern reference;
  if (syndrome_or_reference.size() == lay.z_faces.size()) {
    reference = reference_from_syndrome(lay, aux.graph, syndrome_or_reference);
  } else if (static_cast<int>(syndrome_or_reference.size()) == lay.num_qubits()) {
    reference = syndrome_or_reference;
  } else {
    throw std::invalid_argument("input must be a syndrome or an error pattern");
  }
  auto [l0, l1] = aux.transfer.coset_log_weights(reference, q);
  DecodeResult res;
  res.matching_weight = std::nan("");
  res.correction = reference;
  if (l1 > l0) {
    for (int qb : lay.logical_x) res.correction.flip(qb);
  }
  res.logical_flip = logical_parity(lay, res.correction);
  res.log_likelihoods = {l0, l1};
  return res;
}

std::pair<double, double> brute_force_coset(const CodeLayout& lay,
                                            const ErrorPattern& reference, double q) {
  if (lay.distance > 4)
    throw std::invalid_argument("brute-force coset enumeration supports d <= 4");
  const size_t nf = lay.x_faces.size();
  const int n = lay.num_qubits();
  double w[2] = {0, 0};
  for (int logical = 0; logical < 2; ++logical) {
    ErrorPattern base = reference;
    if (logical)
      for (int qb : lay.logical_x) base.flip(qb);
    double total = 0;
    for (size_t mask = 0; mask < (size_t{1} << nf); ++mask) {
      ErrorPattern e = base;
      for (size_t f = 0; f < nf; ++f)
        if (mask >> f & 1)
          for (int qb : lay.x_faces[f].qubits) e.flip(qb);
      const auto weight = static_cast<double>(e.popcount());
      total += std::pow(q, weight) * std::pow(1 - q, n - weight);
    }
    w[logical] = total;
  }
  return {w[0], w[1]};
}

int decode_shot(const CodeLayout& lay, const BitVec& receiver_bits, double q,
                DecoderKind kind) {
  if (static_cast<int>(receiver_bits.size()) != lay.num_qubits())
    throw std::invalid_argument("bitstring length must be d^2");
  const int raw = logical_parity(lay, receiver_bits);
  // decode from the syndrome so exactly-tied coset weights (distance 2)
  // resolve the same way for every gauge-equivalent readout
  Syndrome syn = syndrome_of(lay, receiver_bits);
  DecodeResult res = (kind == DecoderKind::Ml) ? decode_coset_ml(lay, syn, q)
                                               : decode_mwpm(lay, syn, q);
  return raw ^ res.logical_flip;
}

std::string decode_batch_csv(const CodeLayout& lay, const BitstringBatch& batch, double q,
                             DecoderKind kind) {
  std::ostringstream out;
  out << "shot,syndrome_weight,logical_flip,corrected_bit,L0,L1\n";
  for (size_t s = 0; s < batch.shots.size(); ++s) {
    const BitVec& bits = batch.shots[s];
    Syndrome syn = syndrome_of(lay, bits);
    DecodeResult res = (kind == DecoderKind::Ml) ? decode_coset_ml(lay, syn, q)
                                                 : decode_mwpm(lay, syn, q);
    int corrected = logical_parity(lay, bits) ^ res.logical_flip;
    out << s << ',' << syn.popcount() << ',' << res.logical_flip << ',' << corrected << ','
        << res.log_likelihoods.first << ',' << res.log_likelihoods.second << "\n";
  }
  return out.str();
}

}  // namespace telesurf
