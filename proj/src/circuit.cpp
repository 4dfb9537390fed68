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

#include "telesurf/circuit.hpp"

#include <sstream>
#include <stdexcept>

namespace telesurf {

int CliffordCircuit::two_qubit_depth() const {
  int depth = 0;
  for (const auto& layer : layers)
    for (const auto& g : layer)
      if (g.is_two_qubit()) {
        ++depth;
        break;
      }
  return depth;
}

void CliffordCircuit::validate() const {
  std::vector<int> last_layer(n, -1);
  for (size_t l = 0; l < layers.size(); ++l) {
    for (const auto& g : layers[l]) {
      int qs[2] = {g.q0, g.is_two_qubit() ? g.q1 : -1};
      for (int q : qs) {
        if (q < 0 && q != -1) throw std::invalid_argument("negative qubit index");
        if (q == -1) continue;
        if (q >= n) throw std::invalid_argument("qubit index out of range");
        if (last_layer[q] == static_cast<int>(l))
          throw std::invalid_argument("overlapping gates in one layer");
        last_layer[q] = static_cast<int>(l);
      }
      if (g.is_two_qubit() && g.q0 == g.q1)
        throw std::invalid_argument("two-qubit gate with identical qubits");
    }
  }
}

SimResult simulate(const CliffordCircuit& circuit, Tableau initial, Rng& rng) {
  if (circuit.n != initial.num_qubits())
    throw std::invalid_argument("circuit and tableau qubit counts differ");
  circuit.validate();
  SimResult res{std::move(initial), {}};
  for (size_t l = 0; l < circuit.layers.size(); ++l) {
    for (const auto& g : circuit.layers[l]) {
      switch (g.op) {
        case GateOp::H:
          res.tableau.apply_h(g.q0);
          break;
        case GateOp::X:
          res.tableau.apply_x(g.q0);
          break;
        case GateOp::Z:
          res.tableau.apply_z(g.q0);
          break;
        case GateOp::CNOT:
          res.tableau.apply_cnot(g.q0, g.q1);
          break;
        case GateOp::SWAP:
          res.tableau.apply_swap(g.q0, g.q1);
          break;
        case GateOp::MZ: {
          bool was_random = false;
          int outcome = res.tableau.measure_z(g.q0, rng, &was_random);
          res.record.push_back({static_cast<int>(l), g.q0, outcome, was_random});
          break;
        }
      }
    }
  }
  return res;
}

namespace {
const char* op_name(GateOp op) {
  switch (op) {
    case GateOp::H: return "H";
    case GateOp::X: return "X";
    case GateOp::Z: return "Z";
    case GateOp::CNOT: return "CNOT";
    case GateOp::SWAP: return "SWAP";
    case GateOp::MZ: return "MZ";
  }
  return "?";
}
}  // namespace

std::string circuit_to_text(const CliffordCircuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.n << "\n";
  for (const auto& layer : circuit.layers) {
    bool first = true;
    for (const auto& g : layer) {
      if (!first) out << ' ';
      first = false;
      out << op_name(g.op) << ' ' << g.q0;
      if (g.is_two_qubit()) out << ' ' << g.q1;
    }
    out << "\n";
  }
  return out.str();
}

CliffordCircuit circuit_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CliffordCircuit c;
  bool have_header = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (!have_header) {
      std::string kw;
      if (!(ls >> kw) || kw != "qubits" || !(ls >> c.n))
        throw std::invalid_argument("circuit text must start with `qubits N`");
      have_header = true;
      continue;
    }
    std::vector<Gate> layer;
    std::string tok;
    while (ls >> tok) {
      Gate g{};
      if (tok == "H") g.op = GateOp::H;
      else if (tok == "X") g.op = GateOp::X;
      else if (tok == "Z") g.op = GateOp::Z;
      else if (tok == "CNOT") g.op = GateOp::CNOT;
      else if (tok == "SWAP") g.op = GateOp::SWAP;
      else if (tok == "MZ") g.op = GateOp::MZ;
      else throw std::invalid_argument("unknown gate token: " + tok);
      if (!(ls >> g.q0)) throw std::invalid_argument("missing qubit operand");
      if (g.is_two_qubit() && !(ls >> g.q1))
        throw std::invalid_argument("missing second qubit operand");
      layer.push_back(g);
    }
    c.layers.push_back(std::move(layer));
  }
  if (!have_header) throw std::invalid_argument("empty circuit text");
  return c;
}

}  // namespace telesurf
