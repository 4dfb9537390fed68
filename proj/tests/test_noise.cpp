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
#include <map>
#include <numbers>

#include "doctest.h"
#include "telesurf/noise.hpp"

using namespace telesurf;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("effective entangling parameter maps") {
  CHECK(effective_entangling(kPi / 2, 0, 0) == doctest::Approx(0.0));
  // p = 1/2 at t = 0 reaches the trivial limit t_eff = pi/4
  CHECK(effective_entangling(kPi / 2, 0, 0.5) == doctest::Approx(kPi / 4));
  // sin^2(t_eff) = p when t = 0
  double te = effective_entangling(kPi / 2, 0, 0.2);
  CHECK(std::sin(te) * std::sin(te) == doctest::Approx(0.2).epsilon(1e-12));
  // diagonal axis: sin^2(t_eff) = sin^2 t + p (1 + cos 2t)
  te = effective_entangling(kPi / 4, 0, 0.03);
  CHECK(std::sin(te) * std::sin(te) == doctest::Approx(0.06).epsilon(1e-12));
  CHECK_THROWS_AS(effective_entangling(0.3, 0.1, 0), std::invalid_argument);
  CHECK_THROWS_AS(effective_entangling(kPi / 2, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(effective_entangling(kPi / 2, 0.1, 0.8), std::invalid_argument);
}

TEST_CASE("syndrome flip rate against the reported asymptotic thresholds") {
  // the asymptotic coherent thresholds must map onto the incoherent one
  CHECK(std::abs(syndrome_flip_rate(kPi / 2, 0.1072128 * kPi) - 0.1092212) < 1e-4);
  CHECK(std::abs(syndrome_flip_rate(kPi / 4, 0.1548014 * kPi) - 0.1092212) < 1e-4);
  CHECK(syndrome_flip_rate(kPi / 2, kPi / 4) == doctest::Approx(0.5));
}

TEST_CASE("effective entangling is monotone in t and p") {
  for (double theta : {kPi / 2, kPi / 4}) {
    double prev = -1;
    for (int i = 0; i <= 20; ++i) {
      double cur = effective_entangling(theta, (kPi / 4) * i / 20, 0.02);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
    prev = -1;
    for (int i = 0; i <= 20; ++i) {
      double cur = effective_entangling(theta, 0.1, 0.5 * i / 20);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("error sampling statistics") {
  CodeLayout lay = build_layout(7);
  Rng rng(21);
  SUBCASE("q=0 never flips") {
    for (int s = 0; s < 100; ++s) CHECK_FALSE(sample_error(lay, 0, rng).any());
  }
  SUBCASE("binomial mean at q=0.109") {
    const double q = 0.109;
    const int shots = 100000;
    int64_t flips = 0;
    for (int s = 0; s < shots; ++s) flips += sample_error(lay, q, rng).popcount();
    double mean = static_cast<double>(flips) / shots;
    double sigma = std::sqrt(49 * q * (1 - q) / shots);
    CHECK(std::abs(mean - 49 * q) < 3 * sigma);
  }
  SUBCASE("q=1/2 leaves the logical parity unbiased") {
    const int shots = 100000;
    int64_t odd = 0;
    for (int s = 0; s < shots; ++s) odd += logical_parity(lay, sample_error(lay, 0.5, rng));
    double rate = static_cast<double>(odd) / shots;
    CHECK(std::abs(rate - 0.5) < 3 * std::sqrt(0.25 / shots));
  }
}

TEST_CASE("parity expectation values") {
  CHECK(parity_expectation(0, 2) == doctest::Approx(1.0));
  CHECK(parity_expectation(0.05, 4) == doctest::Approx(0.6561));
  CHECK(parity_expectation(0.5, 2) == doctest::Approx(0.0));
}

TEST_CASE("noise estimation inverts the parity model exactly") {
  const double p = 0.03;
  ParityReport report;
  report.faces = {{2, parity_expectation(p, 2)}, {2, parity_expectation(p, 2)},
                  {4, parity_expectation(p, 4)}, {4, parity_expectation(p, 4)}};
  CHECK(estimate_noise_from_parities(report) == doctest::Approx(p).epsilon(1e-12));

  ParityReport ones{{{2, 1.0}, {4, 1.0}}};
  CHECK(estimate_noise_from_parities(ones) == doctest::Approx(0.0));
  ParityReport zeros{{{2, 0.0}, {4, 0.0}}};
  CHECK(estimate_noise_from_parities(zeros) == doctest::Approx(0.5));
  ParityReport bad{{{2, 0.5}, {4, -0.9}}};
  CHECK_THROWS_AS(estimate_noise_from_parities(bad), std::invalid_argument);
  ParityReport onlyw2{{{2, 0.5}}};
  CHECK_THROWS_AS(estimate_noise_from_parities(onlyw2), std::invalid_argument);
}

TEST_CASE("linear noise fit reproduces the reported device trend") {
  std::vector<double> d_list = {2, 3, 4, 5, 6, 7};
  std::vector<double> p_list = {0.0237, 0.0306, 0.0364, 0.0380, 0.0484, 0.0505};
  LinearNoiseFit fit = fit_linear_noise(d_list, p_list);
  CHECK(std::abs(fit.a - 0.0054) < 0.1 * 0.0054);
  CHECK(std::abs(fit.d0 - 2.5) < 0.1 * 2.5);
  CHECK(max_distance(0.0054, 2.5, 0.109) == 17);

  // exact linear synthetic data recovers exactly
  std::vector<double> ds = {2, 4, 6, 9};
  std::vector<double> ps;
  for (double dd : ds) ps.push_back(0.004 * (dd + 1.75));
  LinearNoiseFit exact = fit_linear_noise(ds, ps);
  CHECK(exact.a == doctest::Approx(0.004).epsilon(1e-10));
  CHECK(exact.d0 == doctest::Approx(1.75).epsilon(1e-8));

  CHECK_THROWS_AS(fit_linear_noise({3, 3}, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("readout mitigation") {
  SUBCASE("identity response leaves parity unchanged") {
    std::vector<ResponseMatrix> ms(2);
    ms[0].qubit = 0;
    ms[1].qubit = 1;
    std::vector<double> counts = {70, 10, 10, 10};  // parity (70-10-10+10)/100
    MitigationResult res = mitigate_readout(counts, ms);
    CHECK(res.parity == doctest::Approx(0.6));
    CHECK(res.in_range);
  }

  SUBCASE("synthetic round trip with asymmetric errors") {
    // two-bit distribution with true parity 0.8
    Rng rng(4);
    Eigen::Matrix2d m;
    m << 0.98, 0.01, 0.02, 0.99;  // 2% flip on 0, 1% flip on 1
    std::vector<ResponseMatrix> ms(2);
    ms[0] = {0, m};
    ms[1] = {1, m};
    std::vector<double> counts(4, 0.0);
    const int shots = 100000;
    for (int s = 0; s < shots; ++s) {
      int b = rng.next_bool() ? 1 : 0;
      int f = rng.bernoulli(0.1) ? 1 : 0;  // parity -1 with prob 0.1
      int bits[2] = {b, b ^ f};
      int observed = 0;
      for (int k = 0; k < 2; ++k) {
        bool flip = rng.bernoulli(bits[k] ? m(0, 1) : m(1, 0));
        observed |= (bits[k] ^ (flip ? 1 : 0)) << k;
      }
      counts[observed] += 1;
    }
    MitigationResult res = mitigate_readout(counts, ms);
    CHECK(std::abs(res.parity - 0.8) < 0.01);
    CHECK(res.in_range);
  }

  SUBCASE("singular response is rejected") {
    ResponseMatrix rm;
    rm.m << 0.5, 0.5, 0.5, 0.5;
    CHECK_THROWS_AS(mitigate_readout({1, 1}, {rm}), std::invalid_argument);
  }
}

TEST_CASE("calibration file parsing") {
  auto js = response_matrices_from_json(
      R"([{"qubit": 0, "m": [[0.98, 0.01], [0.02, 0.99]]},
          {"qubit": 3, "m": [[0.97, 0.02], [0.03, 0.98]]}])");
  REQUIRE(js.size() == 2);
  CHECK(js[1].qubit == 3);
  CHECK(js[0].m(1, 0) == doctest::Approx(0.02));

  auto cs = response_matrices_from_csv("0,0.98,0.01,0.02,0.99\n3,0.97,0.02,0.03,0.98\n");
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].m(0, 0) == doctest::Approx(0.98));
  CHECK(cs[1].qubit == 3);
}

TEST_CASE("classical error injection") {
  Rng rng(13);
  std::vector<BitVec> shots(200, BitVec(49));
  SUBCASE("p_flip = 0 is the identity") {
    auto copy = shots;
    inject_classical_errors(copy, 0.0, rng);
    for (size_t i = 0; i < shots.size(); ++i) CHECK(copy[i] == shots[i]);
  }
  SUBCASE("flip statistics") {
    auto copy = shots;
    inject_classical_errors(copy, 0.25, rng);
    int64_t flips = 0;
    for (const auto& s : copy) flips += s.popcount();
    double total = 200.0 * 49.0;
    CHECK(std::abs(flips / total - 0.25) < 3 * std::sqrt(0.25 * 0.75 / total));
  }
}

TEST_CASE("combined error rate") {
  CHECK(combined_rate(0.3, 0) == doctest::Approx(0.3));
  CHECK(combined_rate(0.0211, 0.1) == doctest::Approx(0.11688).epsilon(1e-9));
  CHECK(combined_rate(0.12, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("composition law: two-stage flips equal the single effective rate") {
  // theta = pi/2: flipping at sin^2 t then at p matches one pass at
  // sin^2(t_eff); compare syndrome histograms with a two-sample chi^2.
  CodeLayout lay = build_layout(3);
  const double t = 0.12 * kPi, p = 0.04;
  const double r1 = std::sin(t) * std::sin(t);
  const double q = syndrome_flip_rate(kPi / 2, effective_entangling(kPi / 2, t, p));
  const int shots = 1000000;

  std::map<uint64_t, std::array<int64_t, 2>> hist;
  Rng rng(77);
  for (int s = 0; s < shots; ++s) {
    ErrorPattern two = sample_error(lay, r1, rng);
    ErrorPattern extra = sample_error(lay, p, rng);
    two ^= extra;
    ErrorPattern one = sample_error(lay, q, rng);
    uint64_t key2 = 0, key1 = 0;
    Syndrome s2 = syndrome_of(lay, two), s1 = syndrome_of(lay, one);
    for (size_t f = 0; f < lay.z_faces.size(); ++f) {
      key2 |= uint64_t{s2.get(f)} << f;
      key1 |= uint64_t{s1.get(f)} << f;
    }
    hist[key2][0]++;
    hist[key1][1]++;
  }
  double chi2 = 0;
  int dof = 0;
  for (auto& [key, counts] : hist) {
    double n1 = static_cast<double>(counts[0]), n2 = static_cast<double>(counts[1]);
    if (n1 + n2 < 10) continue;
    chi2 += (n1 - n2) * (n1 - n2) / (n1 + n2);
    ++dof;
  }
  // dof ~ 16 bins; 3.5-sigma-ish acceptance
  CHECK(chi2 < dof + 3.5 * std::sqrt(2.0 * dof));
}
