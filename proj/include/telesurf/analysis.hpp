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

#ifndef TELESURF_ANALYSIS_HPP
#define TELESURF_ANALYSIS_HPP

#include <string>
#include <vector>

#include "telesurf/decoder.hpp"

namespace telesurf {

struct SweepSpec {
  double theta = 0;
  std::vector<double> t_grid;
  double p = 0;
  std::vector<int> distances;
  uint64_t shots = 1;
  DecoderKind decoder = DecoderKind::Ml;
  uint64_t seed = 0;
  /// When set, t_grid entries are bit-flip rates q fed to the decoder
  /// directly instead of entangling detunings.
  bool direct_q = false;

  void validate() const;
};

struct SweepRow {
  double theta;
  double t;
  double t_eff;
  double q;
  int d;
  uint64_t shots;
  double p_l;
  double stderr_;
};
using SweepTable = std::vector<SweepRow>;

/// Monte-Carlo logical error rates over the (t, d) grid. Bitwise
/// reproducible for a fixed spec regardless of thread count.
SweepTable run_sweep(const SweepSpec& spec);

std::string sweep_to_csv(const SweepTable& table);
SweepTable sweep_from_csv(const std::string& text);

/// Figure-ready series: x,y,yerr,series (series = code distance).
std::string sweep_to_plot_data(const SweepTable& table, bool x_is_q);

struct ScalingFit {
  double t_c = 0;
  double t_c_err = 0;
  double nu = 0;
  double nu_err = 0;
  double omega = 0;            // correction-to-scaling exponent
  std::vector<double> coeffs;  // scaling polynomial c0..c2, then c3 of d^-omega
  double chi2 = 0;
  int n_points = 0;
  bool boundary_hit = false;  // best t_c pinned to the grid edge: fit rejected
};

/// Least-squares collapse p_L = sum_k c_k [(t - t_c) d^(1/nu)]^k (k <= 2)
/// plus a correction-to-scaling offset c3 d^(-omega), with bootstrap
/// confidence intervals. The correction term absorbs the systematic drift of
/// small-distance crossings toward the asymptotic critical point.
ScalingFit fss_fit(const SweepTable& table, int bootstrap = 200, uint64_t seed = 12345);

struct TomographyFit {
  double p_x = 0, p_x_err = 0;
  double p_z = 0, p_z_err = 0;
};

/// Fits <X_L> = (1-2 p_z) sin(theta_l), <Z_L> = (1-2 p_x) cos(theta_l).
TomographyFit fit_logical_asymmetry(const std::vector<double>& theta_l,
                                    const std::vector<double>& x_vals,
                                    const std::vector<double>& z_vals);

/// F = (1 + cos(theta_l) z + sin(theta_l) x) / 2.
double logical_fidelity(double theta_l, double x, double z);

/// Key-value config: theta, t_grid, p, distances, shots, decoder, seed,
/// direct_q. Values accept a `pi` suffix and lo:hi:step ranges.
SweepSpec sweep_spec_from_config(const std::string& text);

/// Parses one numeric token with optional `pi` suffix.
double parse_angle(const std::string& token);
/// Parses comma lists and lo:hi:step ranges of angle tokens.
std::vector<double> parse_grid(const std::string& token);

}  // namespace telesurf

#endif  // TELESURF_ANALYSIS_HPP
