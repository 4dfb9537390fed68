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

#ifndef TELESURF_NOISE_HPP
#define TELESURF_NOISE_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "telesurf/layout.hpp"
#include "telesurf/rng.hpp"

namespace telesurf {

/// Single decoder-facing description of combined coherent + incoherent error.
struct EffectiveChannel {
  double theta;
  double t_eff;
  double q;  // per-qubit bit-flip probability fed to decoders
};

/// Combines the entangling detuning t with incoherent rate p into t_eff:
///   theta = pi/2:  sin^2(t_eff) = sin^2(t) + p cos(2t)
///   theta = pi/4:  sin^2(t_eff) = sin^2(t) + p (1 + cos(2t))
double effective_entangling(double theta, double t, double p);

/// q = sin^2(t_eff) for theta = pi/2, sin^2(t_eff)/2 for theta = pi/4.
double syndrome_flip_rate(double theta, double t_eff);

EffectiveChannel make_effective_channel(double theta, double t, double p);

/// Independent bit flips with probability q on every data qubit.
ErrorPattern sample_error(const CodeLayout& layout, double q, Rng& rng);

/// (1 - 2p)^w for stabilizer weight w.
double parity_expectation(double p, int w);

/// Per-face parity expectations with their stabilizer weights.
struct ParityReport {
  std::vector<std::pair<int, double>> faces;  // (weight, value)

  /// Weight-2 values are squared before averaging.
  double mean_parity() const;
};

/// Inverts the weighted parity average: solves
/// 1 - 2p = ((sum_w2 <A>^2 + sum_w4 <A>) / count)^{1/4}.
double estimate_noise_from_parities(const ParityReport& parities);

struct LinearNoiseFit {
  double a;
  double d0;
};

/// Least-squares fit p(d) = a (d + d0).
LinearNoiseFit fit_linear_noise(const std::vector<double>& d_list,
                                const std::vector<double>& p_list);

/// Largest code distance with p(d) below threshold: floor(p_c/a - d0).
int max_distance(double a, double d0, double p_c);

/// Per-qubit 2x2 stochastic readout response; columns are prepared states.
struct ResponseMatrix {
  int qubit = -1;
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();

  void validate() const;  // stochastic columns, invertible
};

struct MitigationResult {
  double parity;
  bool in_range;  // corrected probabilities within [-eps, 1+eps]
};

/// Applies the inverse tensor-product response to a face-marginal outcome
/// distribution (index bit k = observed value of matrices[k].qubit) and
/// returns the parity expectation of the corrected distribution.
MitigationResult mitigate_readout(const std::vector<double>& marginal_counts,
                                  const std::vector<ResponseMatrix>& matrices);

/// Calibration I/O: JSON array of {qubit, m:[[..],[..]]} or CSV lines
/// `qubit,m00,m01,m10,m11`.
std::vector<ResponseMatrix> response_matrices_from_json(const std::string& text);
std::vector<ResponseMatrix> response_matrices_from_csv(const std::string& text);

/// Flips every bit independently with probability p_flip.
void inject_classical_errors(std::vector<BitVec>& bitstrings, double p_flip, Rng& rng);

/// Error rate after stacking an intrinsic rate p0 with injected p_flip.
double combined_rate(double p0, double p_flip);

}  // namespace telesurf

#endif  // TELESURF_NOISE_HPP
