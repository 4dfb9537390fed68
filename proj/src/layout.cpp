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

#include "telesurf/layout.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace telesurf {

CodeLayout build_layout(int d) {
  if (d < 2) throw std::invalid_argument("code distance must be at least 2");

  CodeLayout lay;
  lay.distance = d;
  lay.qubits.reserve(d * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) lay.qubits.emplace_back(r, c);

  auto q = [d](int r, int c) { return r * d + c; };

  // Bulk plaquettes: checkerboard over the (d-1)x(d-1) cell grid.
  for (int r = 0; r < d - 1; ++r) {
    for (int c = 0; c < d - 1; ++c) {
      Face f;
      f.kind = ((r + c) % 2 == 0) ? FaceKind::X : FaceKind::Z;
      f.qubits = {q(r, c), q(r, c + 1), q(r + 1, c), q(r + 1, c + 1)};
      f.cell_row = r;
      f.cell_col = c;
      (f.kind == FaceKind::X ? lay.x_faces : lay.z_faces).push_back(std::move(f));
    }
  }
  // Boundary half-plaquettes continue the checkerboard: X type on the top and
  // bottom rows, Z type on the left and right columns.
  for (int c = 0; c < d - 1; ++c) {
    if (c % 2 == 1) {
      Face f{FaceKind::X, {q(0, c), q(0, c + 1)}, -1, c};
      lay.x_faces.push_back(std::move(f));
    }
    if (c % 2 == (d - 1) % 2) {
      Face f{FaceKind::X, {q(d - 1, c), q(d - 1, c + 1)}, d - 1, c};
      lay.x_faces.push_back(std::move(f));
    }
  }
  for (int r = 0; r < d - 1; ++r) {
    if (r % 2 == 0) {
      Face f{FaceKind::Z, {q(r, 0), q(r + 1, 0)}, r, -1};
      lay.z_faces.push_back(std::move(f));
    }
    if (r % 2 == d % 2) {
      Face f{FaceKind::Z, {q(r, d - 1), q(r + 1, d - 1)}, r, d - 1};
      lay.z_faces.push_back(std::move(f));
    }
  }

  for (auto& f : lay.z_faces) std::sort(f.qubits.begin(), f.qubits.end());
  for (auto& f : lay.x_faces) std::sort(f.qubits.begin(), f.qubits.end());

  // Z_L along the bottom row, X_L along the right column; they overlap only
  // at the corner qubit.
  for (int c = 0; c < d; ++c) lay.logical_z.push_back(q(d - 1, c));
  for (int r = 0; r < d; ++r) lay.logical_x.push_back(q(r, d - 1));

  lay.qubit_to_z.assign(d * d, {});
  lay.qubit_to_x.assign(d * d, {});
  for (size_t i = 0; i < lay.z_faces.size(); ++i)
    for (int qq : lay.z_faces[i].qubits) lay.qubit_to_z[qq].push_back(static_cast<int>(i));
  for (size_t i = 0; i < lay.x_faces.size(); ++i)
    for (int qq : lay.x_faces[i].qubits) lay.qubit_to_x[qq].push_back(static_cast<int>(i));

  return lay;
}

Syndrome syndrome_of(const CodeLayout& layout, const ErrorPattern& error) {
  if (static_cast<int>(error.size()) != layout.num_qubits())
    throw std::invalid_argument("error pattern length does not match qubit count");
  Syndrome s(layout.z_faces.size());
  for (size_t f = 0; f < layout.z_faces.size(); ++f) {
    int parity = 0;
    for (int qq : layout.z_faces[f].qubits) parity ^= error.get(qq) ? 1 : 0;
    if (parity) s.set(f, true);
  }
  return s;
}

int logical_parity(const CodeLayout& layout, const ErrorPattern& error) {
  if (static_cast<int>(error.size()) != layout.num_qubits())
    throw std::invalid_argument("error pattern length does not match qubit count");
  int parity = 0;
  for (int qq : layout.logical_z) parity ^= error.get(qq) ? 1 : 0;
  return parity;
}

namespace {

int overlap(const std::vector<int>& a, const std::vector<int>& b) {
  int n = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++n;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("layout invariant violated: " + what);
}

}  // namespace

void validate_layout(const CodeLayout& lay) {
  const int d = lay.distance;
  require(static_cast<int>(lay.qubits.size()) == d * d, "qubit count = d^2");
  require(static_cast<int>(lay.z_faces.size() + lay.x_faces.size()) == d * d - 1,
          "face count = d^2-1");
  if (d % 2 == 0)
    require(lay.z_faces.size() == lay.x_faces.size() + 1,
            "even distance has one more Z face than X faces");

  for (const auto& f : lay.z_faces) require(f.weight() == 2 || f.weight() == 4, "Z face weight");
  for (const auto& f : lay.x_faces) require(f.weight() == 2 || f.weight() == 4, "X face weight");

  for (const auto& zf : lay.z_faces)
    for (const auto& xf : lay.x_faces)
      require(overlap(zf.qubits, xf.qubits) % 2 == 0, "X/Z face commutation");

  std::vector<int> lz = lay.logical_z, lx = lay.logical_x;
  std::sort(lz.begin(), lz.end());
  std::sort(lx.begin(), lx.end());
  require(overlap(lz, lx) % 2 == 1, "logical Z/X anticommutation");
  for (const auto& xf : lay.x_faces)
    require(overlap(lz, xf.qubits) % 2 == 0, "logical Z commutes with X faces");
  for (const auto& zf : lay.z_faces)
    require(overlap(lx, zf.qubits) % 2 == 0, "logical X commutes with Z faces");
}

std::string layout_to_json(const CodeLayout& lay) {
  nlohmann::json j;
  j["distance"] = lay.distance;
  j["qubits"] = nlohmann::json::array();
  for (auto [r, c] : lay.qubits) j["qubits"].push_back({r, c});
  auto faces = nlohmann::json::array();
  for (const auto* group : {&lay.z_faces, &lay.x_faces}) {
    for (const auto& f : *group) {
      faces.push_back({{"kind", f.kind == FaceKind::Z ? "Z" : "X"},
                       {"qubits", f.qubits},
                       {"cell", {f.cell_row, f.cell_col}}});
    }
  }
  j["faces"] = std::move(faces);
  j["logical_z"] = lay.logical_z;
  j["logical_x"] = lay.logical_x;
  return j.dump(2);
}

}  // namespace telesurf
