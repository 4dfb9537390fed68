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

#ifndef TELESURF_LAYOUT_HPP
#define TELESURF_LAYOUT_HPP

#include <string>
#include <vector>

#include "telesurf/bitvec.hpp"

namespace telesurf {

enum class FaceKind { Z, X };

/// One stabilizer face of the rotated lattice: a weight-4 bulk plaquette or a
/// weight-2 boundary half-plaquette.
struct Face {
  FaceKind kind;
  std::vector<int> qubits;  // sorted data-qubit indices
  // Cell coordinates on the (d-1)x(d-1) plaquette grid. Boundary faces use
  // row -1 / d-1 (X type) or col -1 / d-1 (Z type).
  int cell_row;
  int cell_col;

  int weight() const { return static_cast<int>(qubits.size()); }
};

using ErrorPattern = BitVec;  // one bit per data qubit, 1 = Pauli X applied
using Syndrome = BitVec;      // one bit per Z face, 1 = parity -1

/// Rotated surface code of distance d: d^2 data qubits on a square grid,
/// d^2-1 stabilizer faces in a checkerboard pattern, logical Z along the
/// bottom row and logical X along the right column.
struct CodeLayout {
  int distance = 0;
  std::vector<std::pair<int, int>> qubits;  // (row, col), row-major index
  std::vector<Face> z_faces;
  std::vector<Face> x_faces;
  std::vector<int> logical_z;  // support of Z_L
  std::vector<int> logical_x;  // support of X_L

  // qubit index -> indices of the 1..2 faces of each kind containing it
  std::vector<std::vector<int>> qubit_to_z;
  std::vector<std::vector<int>> qubit_to_x;

  int num_qubits() const { return distance * distance; }
  int qubit_index(int row, int col) const { return row * distance + col; }
};

/// Builds the distance-d layout. Deterministic for fixed d; throws
/// std::invalid_argument for d < 2.
CodeLayout build_layout(int d);

/// Defect bit of face f = parity of |flips AND f.qubits|.
Syndrome syndrome_of(const CodeLayout& layout, const ErrorPattern& error);

/// Parity of |flips AND logical_z|: whether the error flips <Z_L>.
int logical_parity(const CodeLayout& layout, const ErrorPattern& error);

/// Checks every structural invariant (counts, weights, commutation, logical
/// operators). Throws std::logic_error with a description on failure.
void validate_layout(const CodeLayout& layout);

/// Documented JSON object with distance, faces and logical supports.
std::string layout_to_json(const CodeLayout& layout);

}  // namespace telesurf

#endif  // TELESURF_LAYOUT_HPP
