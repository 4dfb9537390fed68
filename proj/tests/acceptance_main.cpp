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

// End-to-end acceptance suite: one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "telesurf/analysis.hpp"
#include "telesurf/decoder.hpp"
#include "telesurf/matching.hpp"
#include "telesurf/noise.hpp"
#include "telesurf/prep.hpp"
#include "telesurf/statmech.hpp"
#include "telesurf/teleport.hpp"

using namespace telesurf;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

ScalingFit threshold_sweep(double theta, const std::vector<double>& grid, bool direct_q,
                           DecoderKind decoder, uint64_t seed) {
  SweepSpec spec;
  spec.theta = theta;
  spec.t_grid = grid;
  spec.p = 0;
  spec.distances = {3, 5, 7, 9, 11};
  spec.shots = 20000;
  spec.decoder = decoder;
  spec.seed = seed;
  spec.direct_q = direct_q;
  SweepTable table = run_sweep(spec);
  return fss_fit(table, 100, seed + 1);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

// exhaustive minimum matching weight with per-defect boundary option
int64_t dp_defect_matching(const std::vector<int>& defects, const DefectGraph& graph) {
  const int k = static_cast<int>(defects.size());
  std::vector<int64_t> dp(size_t{1} << k, INT64_MAX / 4);
  dp[0] = 0;
  for (uint32_t mask = 1; mask < (uint32_t{1} << k); ++mask) {
    int i = std::countr_zero(mask);
    uint32_t rest_i = mask ^ (1u << i);
    if (dp[rest_i] + graph.boundary_dist[defects[i]] < dp[mask])
      dp[mask] = dp[rest_i] + graph.boundary_dist[defects[i]];
    for (int j = i + 1; j < k; ++j) {
      if (!(mask >> j & 1)) continue;
      uint32_t rest = rest_i ^ (1u << j);
      if (dp[rest] + graph.dist[defects[i]][defects[j]] < dp[mask])
        dp[mask] = dp[rest] + graph.dist[defects[i]][defects[j]];
    }
  }
  return dp[(uint32_t{1} << k) - 1];
}

double ml_threshold = 0;

void criterion_1_ml_threshold() {
  auto t0 = std::chrono::steady_clock::now();
  ScalingFit fit = threshold_sweep(kPi / 2, linspace(0.097, 0.121, 7), true,
                                   DecoderKind::Ml, 1001);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ml_threshold = fit.t_c;
  bool ok = !fit.boundary_hit && std::abs(fit.t_c - 0.109) < 0.005 && secs < 600;
  report(1, ok,
         fmt("ML bit-flip threshold p_c = %.4f +/- %.4f (target 0.109 +/- 0.005), "
             "%.0f s",
             fit.t_c, fit.t_c_err, secs));
}

void criterion_2_mwpm_threshold() {
  ScalingFit fit = threshold_sweep(kPi / 2, linspace(0.091, 0.115, 7), true,
                                   DecoderKind::Mwpm, 2002);
  bool ok = !fit.boundary_hit && std::abs(fit.t_c - 0.103) < 0.005 && fit.t_c < ml_threshold;
  report(2, ok,
         fmt("MWPM threshold p_c = %.4f +/- %.4f (target 0.103 +/- 0.005, below ML %.4f)",
             fit.t_c, fit.t_c_err, ml_threshold));
}

void criterion_3_coherent_thresholds() {
  ScalingFit fx = threshold_sweep(kPi / 2, linspace(0.095 * kPi, 0.119 * kPi, 7), false,
                                  DecoderKind::Ml, 3003);
  bool ok_x = !fx.boundary_hit && std::abs(fx.t_c - 0.107 * kPi) < 0.005 * kPi;
  // consistency of the two sweep coordinates: q_c = sin^2(t_c)
  double q_c = std::sin(fx.t_c) * std::sin(fx.t_c);
  ok_x = ok_x && std::abs(q_c - ml_threshold) < 0.006;

  ScalingFit fd = threshold_sweep(kPi / 4, linspace(0.143 * kPi, 0.167 * kPi, 7), false,
                                  DecoderKind::Ml, 3004);
  bool ok_d = !fd.boundary_hit && std::abs(fd.t_c - 0.155 * kPi) < 0.005 * kPi;

  report(3, ok_x && ok_d,
         fmt("coherent thresholds t_c(pi/2) = %.4f pi (target 0.107 +/- 0.005), "
             "t_c(pi/4) = %.4f pi (target 0.155 +/- 0.005)",
             fx.t_c / kPi, fd.t_c / kPi));
}

void criterion_4_exact_identities() {
  bool ok = true;
  // (a) t = 0 transfers eight logical targets with unit fidelity
  for (int d : {2, 3}) {
    const int n = d * d;
    for (int k = 0; k < 8 && ok; ++k) {
      LogicalTarget target{kPi * k / 8.0, 0.0};
      StateVector input = prepare_logical_state(d, target);
      for (uint64_t outcome = 0; outcome < (uint64_t{1} << n); ++outcome) {
        double prob = 0;
        StateVector got =
            conditional_receiver_state(d, {kPi / 2, 0, 0, 0}, target, outcome, &prob);
        if (prob < 1e-12) continue;
        if (1 - fidelity(got, input) > 1e-10) {
          ok = false;
          break;
        }
      }
    }
  }
  // (b) deformation factor across a (theta, t) grid
  double worst_def = 0;
  for (double theta : {kPi / 2, kPi / 4})
    for (double t : {0.0, 0.05 * kPi, 0.1 * kPi, 0.15 * kPi, 0.2 * kPi})
      worst_def = std::max(
          worst_def, deformation_check(2, {theta, 0, t, 0}, {kPi / 4, 0}, 16));
  ok = ok && worst_def < 1e-8;
  // (c) twirled channels
  double worst_twirl = 0;
  for (double t : {0.0, 0.1, 0.2, 0.3, 0.4})
    for (double theta : {kPi / 2, kPi / 4})
      worst_twirl = std::max(worst_twirl, twirl_check(theta, t));
  ok = ok && worst_twirl < 1e-10;
  report(4, ok,
         fmt("exact identities: max deformation infidelity %.1e, max twirl distance %.1e",
             worst_def, worst_twirl));
}

void criterion_5_decoder_oracles() {
  // ML coset probabilities against brute-force enumeration
  CodeLayout lay3 = build_layout(3);
  Rng rng(55);
  double worst_rel = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ErrorPattern err = sample_error(lay3, 0.12, rng);
    DecodeResult res = decode_coset_ml(lay3, err, 0.1);
    auto [w0, w1] = brute_force_coset(lay3, err, 0.1);
    worst_rel = std::max(worst_rel, std::abs(std::exp(res.log_likelihoods.first) - w0) / w0);
    worst_rel = std::max(worst_rel, std::abs(std::exp(res.log_likelihoods.second) - w1) / w1);
  }
  bool ok_ml = worst_rel < 1e-10;

  // MWPM matching weight against the exhaustive pairing oracle
  CodeLayout lay5 = build_layout(5);
  const DefectGraph& graph = DefectGraph::of(lay5);
  int accepted = 0, agree = 0;
  while (accepted < 200) {
    ErrorPattern err = sample_error(lay5, 0.08, rng);
    Syndrome syn = syndrome_of(lay5, err);
    auto defects64 = syn.ones();
    if (defects64.empty() || defects64.size() > 12) continue;
    ++accepted;
    std::vector<int> defects(defects64.begin(), defects64.end());
    DecodeResult res = decode_mwpm(lay5, syn, 0.08);
    if (static_cast<int64_t>(res.matching_weight) == dp_defect_matching(defects, graph))
      ++agree;
  }
  report(5, ok_ml && agree == 200,
         fmt("decoder oracles: ML worst relative error %.1e, MWPM %g/200 optimal",
             worst_rel, static_cast<double>(agree)));
}

void criterion_6_preparation() {
  bool ok = true;
  std::string detail;
  for (int d = 2; d <= 7 && ok; ++d) {
    auto target = canonical_generators(target_stabilizers(build_layout(d)));
    Rng rng(3 + d);

    CliffordCircuit unit = build_prep_unitary(d, false);
    if (unit.two_qubit_depth() != (d + 3) / 2) ok = false;
    SimResult su = simulate(unit, Tableau::zero_state(unit.n), rng);
    if (!(su.tableau.canonical_stabilizers() == target)) ok = false;

    CliffordCircuit med = build_prep_unitary(d, true);
    if (med.two_qubit_depth() > 3 * ((d + 3) / 2)) ok = false;
    SimResult sm = simulate(med, Tableau::zero_state(med.n), rng);
    auto med_target = embed_paulis(target_stabilizers(build_layout(d)), 2 * d * d, 0);
    for (int m = d * d; m < 2 * d * d; ++m)
      med_target.push_back(PauliString::from_z_support(2 * d * d, {m}));
    if (!(sm.tableau.canonical_stabilizers() == canonical_generators(med_target))) ok = false;

    MeasurementPrep meas = build_prep_measurement(d, rng);
    if (!(meas.tableau.canonical_stabilizers() == target)) ok = false;

    CliffordCircuit dual = build_prep_dual(d);
    SimResult sd = simulate(dual, Tableau::zero_state(dual.n), rng);
    auto dual_target = embed_paulis(target_stabilizers(build_layout(d)), 2 * d * d, 0);
    auto shifted = embed_paulis(target_stabilizers(build_layout(d)), 2 * d * d, d * d);
    dual_target.insert(dual_target.end(), shifted.begin(), shifted.end());
    if (!(sd.tableau.canonical_stabilizers() == canonical_generators(dual_target))) ok = false;

    if (!ok) detail = fmt("first failure at d = %g", static_cast<double>(d));
  }
  report(6, ok, "preparation routes reach the target group for d in 2..7, exact depth" +
                    (detail.empty() ? "" : " (" + detail + ")"));
}

void criterion_7_renyi_ising() {
  const double want = 1.0 / (2.0 + std::sqrt(2.0));
  double sum = 0;
  std::vector<int> sizes = {4, 8, 12, 16};
  for (size_t i = 0; i + 1 < sizes.size(); ++i)
    sum += ising_crossing(sizes[i], sizes[i + 1], 0.2, 0.4);
  double crossing = sum / 3.0;
  bool ok = std::abs(crossing - 0.293) < 0.010;

  ok = ok && ising_relative_entropy(8, 0.5) == 0.0;

  double gap = std::abs(dm_oracle_renyi(2, 0.1) - ising_relative_entropy(2, 0.1));
  ok = ok && gap < 1e-8;

  double q2 = (1 - std::sqrt(1 - 2 * 0.0211)) / 2;
  PurityEstimate p2 = simulate_bell_experiment(2, q2, PairKind::Same, 40000, 77);
  bool ok2 = std::abs(p2.value - 0.846) < 2 * p2.stderr_ + 2e-3;
  double q3 = (1 - std::sqrt(1 - 2 * 0.0351)) / 2;
  PurityEstimate p3 = simulate_bell_experiment(3, q3, PairKind::Same, 40000, 78);
  bool ok3 = std::abs(p3.value - 0.528) < 2 * p3.stderr_ + 2e-3;

  report(7, ok && ok2 && ok3,
         fmt("Ising crossing p = %.4f (target 0.293 +/- 0.010), purities %.3f / %.3f",
             crossing, p2.value, p3.value));
}

void criterion_8_noise_round_trips() {
  // exact inversion of the parity model
  bool ok = true;
  for (double p : {0.0, 0.01, 0.03, 0.2, 0.5}) {
    ParityReport report_face;
    report_face.faces = {{2, parity_expectation(p, 2)},
                         {4, parity_expectation(p, 4)},
                         {4, parity_expectation(p, 4)}};
    if (std::abs(estimate_noise_from_parities(report_face) - p) > 1e-12) ok = false;
  }

  // device-trend fit and maximum distance
  LinearNoiseFit fit = fit_linear_noise({2, 3, 4, 5, 6, 7},
                                        {0.0237, 0.0306, 0.0364, 0.0380, 0.0484, 0.0505});
  bool ok_fit = std::abs(fit.a - 0.0054) < 0.1 * 0.0054 && std::abs(fit.d0 - 2.5) < 0.25 &&
                max_distance(fit.a, fit.d0, 0.109) == 17;

  // readout-mitigation round trip at 3 sigma
  Rng rng(91);
  Eigen::Matrix2d m;
  m << 0.98, 0.01, 0.02, 0.99;
  std::vector<ResponseMatrix> ms = {{0, m}, {1, m}};
  std::vector<double> counts(4, 0.0);
  const int shots = 100000;
  const double true_parity = 0.8;
  for (int s = 0; s < shots; ++s) {
    int b = rng.next_bool() ? 1 : 0;
    int f = rng.bernoulli((1 - true_parity) / 2) ? 1 : 0;
    int bits[2] = {b, b ^ f};
    int observed = 0;
    for (int k = 0; k < 2; ++k) {
      bool flip = rng.bernoulli(bits[k] ? m(0, 1) : m(1, 0));
      observed |= (bits[k] ^ (flip ? 1 : 0)) << k;
    }
    counts[observed] += 1;
  }
  MitigationResult mit = mitigate_readout(counts, ms);
  double sigma = std::sqrt((1 - true_parity * true_parity) / shots) * 1.2;
  bool ok_mit = mit.in_range && std::abs(mit.parity - true_parity) < 3 * sigma;

  report(8, ok && ok_fit && ok_mit,
         fmt("noise round trips: fit a = %.5f, d0 = %.2f, corrected parity %.3f",
             fit.a, fit.d0, mit.parity));
}

void criterion_9_cross_sampler() {
  bool ok = true;
  double worst_pull = 0;
  const uint64_t shots = 10000;
  for (int d : {2, 3}) {
    CodeLayout lay = build_layout(d);
    for (double theta : {kPi / 2, kPi / 4}) {
      for (double t : {0.0, 0.05 * kPi, 0.1 * kPi}) {
        for (double p : {0.0, 0.03}) {
          double q = syndrome_flip_rate(theta, effective_entangling(theta, t, p));
          TeleportConfig cfg{theta, 0, t, p};
          BitstringBatch batch =
              sample_teleported_bitstrings(d, cfg, {0, 0}, shots, 900 + d);
          double prior = std::clamp(q, 1e-9, 0.499999);
          int64_t fail_oracle = 0;
          for (const auto& s : batch.shots) {
            if (q <= 0) {
              fail_oracle += logical_parity(lay, s) != 0 || syndrome_of(lay, s).any();
            } else {
              fail_oracle += decode_shot(lay, s, prior, DecoderKind::Ml);
            }
          }
          int64_t fail_mc = 0;
          Rng rng(1700 + d, 0);
          for (uint64_t s = 0; s < shots; ++s) {
            ErrorPattern err = sample_error(lay, q, rng);
            if (q <= 0) {
              fail_mc += logical_parity(lay, err);
            } else {
              DecodeResult res = decode_coset_ml(lay, syndrome_of(lay, err), prior);
              fail_mc += logical_parity(lay, err) ^ res.logical_flip;
            }
          }
          double r_o = static_cast<double>(fail_oracle) / shots;
          double r_m = static_cast<double>(fail_mc) / shots;
          double var = (r_o * (1 - r_o) + r_m * (1 - r_m)) / shots;
          double pull = (var > 0) ? std::abs(r_o - r_m) / std::sqrt(var)
                                  : (r_o == r_m ? 0.0 : 1e9);
          worst_pull = std::max(worst_pull, pull);
          if (pull > 3.0) ok = false;
        }
      }
    }
  }
  report(9, ok, fmt("oracle vs effective-channel decoded rates, worst pull %.2f sigma",
                    worst_pull));
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1_ml_threshold();
  criterion_2_mwpm_threshold();
  criterion_3_coherent_thresholds();
  criterion_4_exact_identities();
  criterion_5_decoder_oracles();
  criterion_6_preparation();
  criterion_7_renyi_ising();
  criterion_8_noise_round_trips();
  criterion_9_cross_sampler();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/9 criteria passed in %.0f s\n", 9 - g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
