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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "telesurf/layout.hpp"
#include "telesurf/rng.hpp"

using namespace telesurf;

namespace {

std::set<std::vector<int>> face_sets(const std::vector<Face>& faces) {
  std::set<std::vector<int>> out;
  for (const auto& f : faces) out.insert(f.qubits);
  return out;
}

ErrorPattern pattern_from(const CodeLayout& lay, const std::vector<int>& qubits) {
  ErrorPattern e(lay.num_qubits());
  for (int q : qubits) e.flip(q);
  return e;
}

}  // namespace

TEST_CASE("d=3 layout matches the reference generating set") {
  CodeLayout lay = build_layout(3);
  CHECK(lay.num_qubits() == 9);
  CHECK(lay.z_faces.size() + lay.x_faces.size() == 8);

  std::set<std::vector<int>> want_x = {{0, 1, 3, 4}, {1, 2}, {4, 5, 7, 8}, {6, 7}};
  std::set<std::vector<int>> want_z = {{0, 3}, {1, 2, 4, 5}, {3, 4, 6, 7}, {5, 8}};
  CHECK(face_sets(lay.x_faces) == want_x);
  CHECK(face_sets(lay.z_faces) == want_z);
  CHECK(lay.logical_z == std::vector<int>{6, 7, 8});
}

TEST_CASE("d=2 layout has two weight-2 Z faces and one weight-4 X face") {
  CodeLayout lay = build_layout(2);
  CHECK(lay.num_qubits() == 4);
  REQUIRE(lay.z_faces.size() == 2);
  REQUIRE(lay.x_faces.size() == 1);
  CHECK(lay.x_faces[0].weight() == 4);
  for (const auto& f : lay.z_faces) CHECK(f.weight() == 2);
  // brute-force commutation across all pairs
  validate_layout(lay);
}

TEST_CASE("d=7 layout counts") {
  CodeLayout lay = build_layout(7);
  CHECK(lay.num_qubits() == 49);
  CHECK(lay.z_faces.size() + lay.x_faces.size() == 48);
}

TEST_CASE("rejects d < 2") {
  CHECK_THROWS_AS(build_layout(1), std::invalid_argument);
  CHECK_THROWS_AS(build_layout(0), std::invalid_argument);
}

TEST_CASE("all structural invariants hold for d in 2..9") {
  for (int d = 2; d <= 9; ++d) {
    CAPTURE(d);
    CodeLayout lay = build_layout(d);
    CHECK_NOTHROW(validate_layout(lay));
    CHECK(static_cast<int>(lay.qubits.size()) == d * d);
  }
}

TEST_CASE("syndrome_of basics") {
  CodeLayout lay = build_layout(3);

  SUBCASE("zero error gives zero syndrome") {
    Syndrome s = syndrome_of(lay, ErrorPattern(9));
    CHECK_FALSE(s.any());
  }

  SUBCASE("single bulk X flips exactly its two adjacent Z faces") {
    // qubit 4 sits in two Z faces by construction
    REQUIRE(lay.qubit_to_z[4].size() == 2);
    Syndrome s = syndrome_of(lay, pattern_from(lay, {4}));
    CHECK(s.popcount() == 2);
    for (int f : lay.qubit_to_z[4]) CHECK(s.get(f));
  }

  SUBCASE("logical X support is syndrome-free") {
    Syndrome s = syndrome_of(lay, pattern_from(lay, lay.logical_x));
    CHECK_FALSE(s.any());
  }

  SUBCASE("length mismatch is rejected") {
    CHECK_THROWS_AS(syndrome_of(lay, ErrorPattern(4)), std::invalid_argument);
  }
}

TEST_CASE("logical_parity basics") {
  CodeLayout lay = build_layout(3);
  CHECK(logical_parity(lay, ErrorPattern(9)) == 0);
  CHECK(logical_parity(lay, pattern_from(lay, lay.logical_x)) == 1);
  // flips on a stabilizer support leave the logical parity untouched
  for (const auto& f : lay.x_faces) CHECK(logical_parity(lay, pattern_from(lay, f.qubits)) == 0);
  CHECK_THROWS_AS(logical_parity(lay, ErrorPattern(3)), std::invalid_argument);
}

TEST_CASE("syndrome_of is linear") {
  Rng rng(7);
  for (int d : {3, 5, 7}) {
    CodeLayout lay = build_layout(d);
    for (int trial = 0; trial < 50; ++trial) {
      ErrorPattern e1(lay.num_qubits()), e2(lay.num_qubits());
      for (int q = 0; q < lay.num_qubits(); ++q) {
        if (rng.bernoulli(0.3)) e1.flip(q);
        if (rng.bernoulli(0.3)) e2.flip(q);
      }
      Syndrome lhs = syndrome_of(lay, e1 ^ e2);
      Syndrome rhs = syndrome_of(lay, e1) ^ syndrome_of(lay, e2);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("multiplying by X faces is a gauge transformation") {
  // exhaustive over the full gauge group for d <= 3
  for (int d : {2, 3}) {
    CodeLayout lay = build_layout(d);
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      ErrorPattern e(lay.num_qubits());
      for (int q = 0; q < lay.num_qubits(); ++q)
        if (rng.bernoulli(0.4)) e.flip(q);
      Syndrome s0 = syndrome_of(lay, e);
      int l0 = logical_parity(lay, e);
      for (size_t mask = 0; mask < (size_t{1} << lay.x_faces.size()); ++mask) {
        ErrorPattern g = e;
        for (size_t f = 0; f < lay.x_faces.size(); ++f)
          if (mask >> f & 1)
            for (int q : lay.x_faces[f].qubits) g.flip(q);
        CHECK(syndrome_of(lay, g) == s0);
        CHECK(logical_parity(lay, g) == l0);
      }
    }
  }
  // randomized single-face checks up to d = 9
  Rng rng(13);
  for (int d = 4; d <= 9; ++d) {
    CodeLayout lay = build_layout(d);
    for (int trial = 0; trial < 25; ++trial) {
      ErrorPattern e(lay.num_qubits());
      for (int q = 0; q < lay.num_qubits(); ++q)
        if (rng.bernoulli(0.3)) e.flip(q);
      Syndrome s0 = syndrome_of(lay, e);
      int l0 = logical_parity(lay, e);
      size_t f = rng.next_below(lay.x_faces.size());
      for (int q : lay.x_faces[f].qubits) e.flip(q);
      CHECK(syndrome_of(lay, e) == s0);
      CHECK(logical_parity(lay, e) == l0);
    }
  }
}

TEST_CASE("json export is well-formed and complete") {
  CodeLayout lay = build_layout(3);
  auto j = nlohmann::json::parse(layout_to_json(lay));
  CHECK(j["distance"] == 3);
  CHECK(j["faces"].size() == 8);
  CHECK(j["qubits"].size() == 9);
  CHECK(j["logical_z"].size() == 3);
  CHECK(j["logical_x"].size() == 3);
}
