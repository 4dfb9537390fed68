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

#ifndef TELESURF_PREP_HPP
#define TELESURF_PREP_HPP

#include <vector>

#include "telesurf/circuit.hpp"
#include "telesurf/layout.hpp"
#include "telesurf/pauli.hpp"
#include "telesurf/tableau.hpp"

namespace telesurf {

/// Classical record of Pauli corrections implied by random projective
/// stabilizer outcomes.
struct PauliFrame {
  BitVec x_correction;  // per data qubit
  BitVec z_correction;  // per data qubit
  BitVec face_flips;    // per X face: outcome was -1 before correction
};

/// Generator set of the target logical-zero state: all Z faces, all X faces
/// and the logical Z string, each with +1 sign.
std::vector<PauliString> target_stabilizers(const CodeLayout& layout);

/// Shifts every generator into an m-qubit register starting at `offset`.
std::vector<PauliString> embed_paulis(const std::vector<PauliString>& gens, int total_n,
                                      int offset);

/// Unitary encoder: H on one representative qubit per X face, then CNOT
/// layers that grow each face operator. Non-mediated circuits act on d^2
/// qubits with two-qubit depth exactly floor((d+3)/2); the mediated variant
/// routes every CNOT through an ancilla register of d^2 mediator qubits with
/// a three-CNOT sequence per gate, for depth at most 3*floor((d+3)/2).
CliffordCircuit build_prep_unitary(int d, bool mediated);

/// Prepares two interleaved codes in |0_L> x |0_L>. Counterpart qubits are
/// brought together by SWAP gates (each compiled as three CNOTs), entangled
/// locally, and returned to their home lattices.
CliffordCircuit build_prep_dual(int d);

struct MeasurementPrep {
  Tableau tableau;       // frame-corrected state
  PauliFrame frame;
  std::vector<int> outcomes;  // raw X-face measurement results
};

/// Projects |0...0> into the code space by measuring every X face; random -1
/// outcomes are absorbed into the Pauli frame (Z strings to the lattice
/// boundary), so the returned tableau stabilizes the target group exactly.
MeasurementPrep build_prep_measurement(int d, Rng& rng);

}  // namespace telesurf

#endif  // TELESURF_PREP_HPP
