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
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "telesurf/statevector.hpp"
#include "telesurf/statmech.hpp"

using namespace telesurf;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("renyi relative entropy from purities") {
  CHECK(renyi_from_purities(0.4, 0.4) == doctest::Approx(0.0));
  CHECK(renyi_from_purities(0.846, 0.846 * std::exp(-1.0)) == doctest::Approx(1.0));
  CHECK(std::isinf(renyi_from_purities(0.528, 0.0)));
  CHECK_THROWS_AS(renyi_from_purities(0.0, 0.1), std::invalid_argument);
}

TEST_CASE("ising relative entropy basics") {
  SUBCASE("p = 1/2 vanishes exactly") {
    for (int L : {2, 4, 8}) CHECK(ising_relative_entropy(L, 0.5) == 0.0);
  }
  SUBCASE("non-negative and decreasing in p") {
    for (int L : {4, 8}) {
      double prev = 1e300;
      for (int i = 1; i <= 10; ++i) {
        double p = 0.05 * i;
        double d2 = ising_relative_entropy(L, p);
        CHECK(d2 >= -1e-12);
        CHECK(d2 <= prev + 1e-12);
        prev = d2;
      }
    }
  }
  SUBCASE("domain checks") {
    CHECK_THROWS_AS(ising_relative_entropy(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ising_relative_entropy(25, 0.2), std::invalid_argument);
  }
}

TEST_CASE("finite-size crossings land on the self-dual point") {
  // pairwise crossings over L in {4,8,12,16} against p_c = 1/(2+sqrt(2))
  const double want = 1.0 / (2.0 + std::sqrt(2.0));
  std::vector<int> sizes = {4, 8, 12, 16};
  double sum = 0;
  for (size_t i = 0; i + 1 < sizes.size(); ++i) {
    double pc = ising_crossing(sizes[i], sizes[i + 1], 0.2, 0.4);
    CAPTURE(sizes[i]);
    CHECK(std::abs(pc - want) < 0.02);
    sum += pc;
  }
  CHECK(std::abs(sum / 3.0 - want) < 0.010);
  // the equivalent per-channel rate at the critical point
  double q_c = (1 - std::sqrt(1 - 2 * want)) / 2;
  CHECK(q_c == doctest::Approx(0.178).epsilon(0.005));
}

TEST_CASE("crossings sharpen with system size") {
  // |d D2/dp| at the critical point grows with L
  const double pc = 1.0 / (2.0 + std::sqrt(2.0));
  double slope_small = (ising_relative_entropy(4, pc + 0.01) - ising_relative_entropy(4, pc - 0.01));
  double slope_large = (ising_relative_entropy(16, pc + 0.01) - ising_relative_entropy(16, pc - 0.01));
  CHECK(std::abs(slope_large) > std::abs(slope_small));
}

TEST_CASE("density-matrix oracle ties the knots together") {
  SUBCASE("p = 1/2 vanishes") {
    CHECK(dm_oracle_renyi(2, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("agrees with the transfer-matrix value at the code size") {
    for (int d : {2, 3}) {
      CAPTURE(d);
      for (double p : {0.05, 0.1, 0.25}) {
        CAPTURE(p);
        CHECK(std::abs(dm_oracle_renyi(d, p) - ising_relative_entropy(d, p)) < 1e-8);
      }
    }
  }
  SUBCASE("rejects large d") {
    CHECK_THROWS_AS(dm_oracle_renyi(4, 0.1), std::invalid_argument);
  }
}

TEST_CASE("swap eigenvalue formula against dense two-qubit states") {
  // measurement circuit: CNOT(0->1), then X on qubit 0 / Z on qubit 1;
  // E[(1+x+z-xz)/2] must equal tr(SWAP rho) = tr(rho_a rho_b) for products.
  auto swap_expectation = [](const StateVector& two) {
    StateVector s = two;
    apply_2q(s, 0, 1, gates::cnot());
    apply_1q(s, 0, gates::hadamard());
    double e = 0;
    for (int idx = 0; idx < 4; ++idx) {
      int x = (idx & 1) ? -1 : 1;
      int z = (idx & 2) ? -1 : 1;
      double v = (1.0 + x + z - x * z) / 2.0;
      e += v * std::norm(s.amps[idx]);
    }
    return e;
  };

  SUBCASE("bell states") {
    // |phi+->,|psi+-> have swap eigenvalues +1,+1,+1,-1
    StateVector phi_plus{2, Eigen::VectorXcd::Zero(4)};
    phi_plus.amps << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
    CHECK(swap_expectation(phi_plus) == doctest::Approx(1.0));
    StateVector phi_minus{2, Eigen::VectorXcd::Zero(4)};
    phi_minus.amps << 1 / std::sqrt(2.0), 0, 0, -1 / std::sqrt(2.0);
    CHECK(swap_expectation(phi_minus) == doctest::Approx(1.0));
    StateVector psi_plus{2, Eigen::VectorXcd::Zero(4)};
    psi_plus.amps << 0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0;
    CHECK(swap_expectation(psi_plus) == doctest::Approx(1.0));
    StateVector singlet{2, Eigen::VectorXcd::Zero(4)};
    singlet.amps << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
    CHECK(swap_expectation(singlet) == doctest::Approx(-1.0));
  }

  SUBCASE("random product states give the state overlap") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::Vector2cd a, b;
      for (int i = 0; i < 2; ++i) {
        a(i) = std::complex<double>(rng.next_double() - 0.5, rng.next_double() - 0.5);
        b(i) = std::complex<double>(rng.next_double() - 0.5, rng.next_double() - 0.5);
      }
      a.normalize();
      b.normalize();
      StateVector two{2, Eigen::VectorXcd::Zero(4)};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) two.amps[i + 2 * j] = a(i) * b(j);
      double overlap = std::norm(a.dot(b));
      CHECK(swap_expectation(two) == doctest::Approx(overlap).epsilon(1e-10));
    }
  }
}

TEST_CASE("bell estimator exact limits") {
  SUBCASE("identical pure states give exactly one every shot") {
    PurityEstimate est = simulate_bell_experiment(3, 0.0, PairKind::Same, 2000, 5);
    CHECK(est.value == 1.0);
    CHECK(est.stderr_ == 0.0);
  }
  SUBCASE("orthogonal pure states average to zero") {
    PurityEstimate est = simulate_bell_experiment(2, 0.0, PairKind::Orthogonal, 40000, 5);
    CHECK(std::abs(est.value) < 3 * est.stderr_);
  }
  CHECK_THROWS_AS(simulate_bell_experiment(2, 0.0, PairKind::Same, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("bell estimator reproduces the oracle purity") {
  for (int d : {2, 3}) {
    CAPTURE(d);
    const double q = 0.02;
    double want = dm_oracle_purity(d, q);
    PurityEstimate est = simulate_bell_experiment(d, q, PairKind::Same, 40000, 9);
    CHECK(std::abs(est.value - want) < 3 * est.stderr_);
  }
}

TEST_CASE("bell estimator matches the reported purities at the fitted noise") {
  struct Row {
    int d;
    double combined;  // pairwise-combined rate fitted in the experiment
    double purity;
  };
  for (const Row& row : {Row{2, 0.0211, 0.846}, Row{3, 0.0351, 0.528}}) {
    CAPTURE(row.d);
    const double q = (1 - std::sqrt(1 - 2 * row.combined)) / 2;
    PurityEstimate est = simulate_bell_experiment(row.d, q, PairKind::Same, 40000, 11);
    CHECK(std::abs(est.value - row.purity) < 2 * est.stderr_ + 2e-3);
    // and the dense oracle pins the same number
    CHECK(std::abs(dm_oracle_purity(row.d, q) - row.purity) < 2e-3);
  }
}

TEST_CASE("bell estimator and density-matrix oracle agree on D2") {
  const int d = 2;
  const double p = 0.1;
  const double q = (1 - std::sqrt(1 - 2 * p)) / 2;
  const uint64_t shots = 1000000;
  PurityEstimate same = simulate_bell_experiment(d, q, PairKind::Same, shots, 21);
  PurityEstimate orth = simulate_bell_experiment(d, q, PairKind::Orthogonal, shots, 22);
  double d2_est = renyi_from_purities(same.value, orth.value);
  double sigma = std::sqrt(std::pow(same.stderr_ / same.value, 2) +
                           std::pow(orth.stderr_ / orth.value, 2));
  double want = dm_oracle_renyi(d, p);
  CHECK(std::abs(d2_est - want) < 3 * sigma);
}
