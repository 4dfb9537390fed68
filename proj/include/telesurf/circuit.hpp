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

#ifndef TELESURF_CIRCUIT_HPP
#define TELESURF_CIRCUIT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "telesurf/rng.hpp"
#include "telesurf/tableau.hpp"

namespace telesurf {

enum class GateOp { H, X, Z, CNOT, SWAP, MZ };

struct Gate {
  GateOp op;
  int q0;
  int q1 = -1;  // second qubit for CNOT/SWAP

  bool is_two_qubit() const { return op == GateOp::CNOT || op == GateOp::SWAP; }
};

/// Layered Clifford gate program. Gates within one layer must act on
/// disjoint qubits; simulate() rejects programs that violate this.
struct CliffordCircuit {
  int n = 0;
  std::vector<std::vector<Gate>> layers;

  void append_layer(std::vector<Gate> layer) { layers.push_back(std::move(layer)); }

  /// Number of layers containing at least one two-qubit gate.
  int two_qubit_depth() const;

  /// Throws std::invalid_argument on out-of-range or overlapping gates.
  void validate() const;
};

struct Measurement {
  int layer;
  int qubit;
  int outcome;      // 0 or 1
  bool was_random;  // true when the Born rule forced a coin flip
};

struct SimResult {
  Tableau tableau;
  std::vector<Measurement> record;
};

/// Evolves the tableau through the circuit. MZ outcomes are random when the
/// measured operator anticommutes with a stabilizer, deterministic otherwise.
SimResult simulate(const CliffordCircuit& circuit, Tableau initial, Rng& rng);

/// Line-oriented text format: `qubits N` header, then one layer per line
/// with gates as `H q`, `X q`, `Z q`, `CNOT c t`, `SWAP a b`, `MZ q`.
std::string circuit_to_text(const CliffordCircuit& circuit);
CliffordCircuit circuit_from_text(const std::string& text);

}  // namespace telesurf

#endif  // TELESURF_CIRCUIT_HPP
