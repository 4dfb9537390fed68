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

#include "telesurf/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace telesurf {

namespace {
constexpr double kPi = std::numbers::pi;

enum class Axis { X, Diagonal };

Axis axis_of(double theta) {
  if (std::abs(theta - kPi / 2) < 1e-9) return Axis::X;
  if (std::abs(theta - kPi / 4) < 1e-9) return Axis::Diagonal;
  throw std::invalid_argument("effective-channel maps support theta = pi/2 or pi/4");
}
}  // namespace

double effective_entangling(double theta, double t, double p) {
  Axis axis = axis_of(theta);
  if (t < -1e-12 || t > kPi / 4 + 1e-12)
    throw std::invalid_argument("t must lie in [0, pi/4]");
  if (p < 0 || p > 0.5) throw std::invalid_argument("p must lie in [0, 1/2]");
  double s2 = std::sin(t) * std::sin(t);
  double rhs = (axis == Axis::X) ? s2 + p * std::cos(2 * t) : s2 + p * (1 + std::cos(2 * t));
  if (rhs < -1e-12 || rhs > 1 + 1e-12)
    throw std::invalid_argument("effective entangling expression outside [0, 1]");
  rhs = std::clamp(rhs, 0.0, 1.0);
  double t_eff = std::asin(std::sqrt(rhs));
  if (axis == Axis::X) t_eff = std::clamp(t_eff, 0.0, kPi / 4);
  return t_eff;
}

double syndrome_flip_rate(double theta, double t_eff) {
  Axis axis = axis_of(theta);
  double s2 = std::sin(t_eff) * std::sin(t_eff);
  return (axis == Axis::X) ? s2 : s2 / 2;
}

EffectiveChannel make_effective_channel(double theta, double t, double p) {
  double t_eff = effective_entangling(theta, t, p);
  return {theta, t_eff, syndrome_flip_rate(theta, t_eff)};
}

ErrorPattern sample_error(const CodeLayout& layout, double q, Rng& rng) {
  if (q < 0 || q > 0.5) throw std::invalid_argument("q must lie in [0, 1/2]");
  ErrorPattern e(layout.num_qubits());
  for (int i = 0; i < layout.num_qubits(); ++i)
    if (rng.bernoulli(q)) e.set(i, true);
  return e;
}

double parity_expectation(double p, int w) {
  if (w != 2 && w != 4) throw std::invalid_argument("stabilizer weight must be 2 or 4");
  return std::pow(1 - 2 * p, w);
}

double ParityReport::mean_parity() const {
  if (faces.empty()) throw std::invalid_argument("empty parity report");
  double sum = 0;
  for (auto [w, v] : faces) sum += (w == 2) ? v * v : v;
  return sum / static_cast<double>(faces.size());
}

double estimate_noise_from_parities(const ParityReport& parities) {
  bool have2 = false, have4 = false;
  for (auto [w, v] : parities.faces) (w == 2 ? have2 : have4) = true;
  if (!have2 || !have4)
    throw std::invalid_argument("need at least one face of each weight class");
  double mean = parities.mean_parity();
  if (mean < 0) throw std::invalid_argument("inconsistent parities: negative radicand");
  return (1 - std::pow(mean, 0.25)) / 2;
}

LinearNoiseFit fit_linear_noise(const std::vector<double>& d_list,
                                const std::vector<double>& p_list) {
  if (d_list.size() != p_list.size() || d_list.size() < 2)
    throw std::invalid_argument("need at least two (d, p) points");
  const auto n = static_cast<Eigen::Index>(d_list.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, 0) = d_list[i];
    A(i, 1) = 1.0;
    y(i) = p_list[i];
  }
  if ((A.col(0).array() - A(0, 0)).abs().maxCoeff() < 1e-12)
    throw std::invalid_argument("degenerate fit: all distances equal");
  Eigen::Vector2d sol = A.colPivHouseholderQr().solve(y);
  return {sol(0), sol(1) / sol(0)};
}

int max_distance(double a, double d0, double p_c) {
  if (a <= 0) throw std::invalid_argument("noise slope must be positive");
  return static_cast<int>(std::floor(p_c / a - d0));
}

void ResponseMatrix::validate() const {
  for (int c = 0; c < 2; ++c) {
    double colsum = m(0, c) + m(1, c);
    if (std::abs(colsum - 1.0) > 1e-9)
      throw std::invalid_argument("response matrix columns must sum to 1");
    for (int r = 0; r < 2; ++r)
      if (m(r, c) < -1e-12 || m(r, c) > 1 + 1e-12)
        throw std::invalid_argument("response matrix entries must lie in [0, 1]");
  }
  if (std::abs(m.determinant()) < 1e-9)
    throw std::invalid_argument("response matrix is singular");
}

MitigationResult mitigate_readout(const std::vector<double>& marginal_counts,
                                  const std::vector<ResponseMatrix>& matrices) {
  const size_t w = matrices.size();
  if (w == 0 || w > 4) throw std::invalid_argument("marginal must cover 1..4 qubits");
  if (marginal_counts.size() != (size_t{1} << w))
    throw std::invalid_argument("marginal size must be 2^w");
  for (const auto& rm : matrices) rm.validate();

  double total = 0;
  for (double c : marginal_counts) total += c;
  if (total <= 0) throw std::invalid_argument("empty marginal");

  std::vector<double> probs(marginal_counts);
  for (double& v : probs) v /= total;

  // apply each inverse response along its bit axis
  for (size_t k = 0; k < w; ++k) {
    Eigen::Matrix2d inv = matrices[k].m.inverse();
    const size_t stride = size_t{1} << k;
    for (size_t base = 0; base < probs.size(); base += 2 * stride) {
      for (size_t i = base; i < base + stride; ++i) {
        double a0 = probs[i], a1 = probs[i + stride];
        probs[i] = inv(0, 0) * a0 + inv(0, 1) * a1;
        probs[i + stride] = inv(1, 0) * a0 + inv(1, 1) * a1;
      }
    }
  }

  constexpr double eps = 1e-6;
  bool in_range = true;
  double parity = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < -eps || probs[i] > 1 + eps) in_range = false;
    parity += (std::popcount(i) & 1) ? -probs[i] : probs[i];
  }
  return {parity, in_range};
}

std::vector<ResponseMatrix> response_matrices_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<ResponseMatrix> out;
  for (const auto& item : j) {
    ResponseMatrix rm;
    rm.qubit = item.at("qubit").get<int>();
    const auto& m = item.at("m");
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) rm.m(r, c) = m.at(r).at(c).get<double>();
    rm.validate();
    out.push_back(rm);
  }
  return out;
}

std::vector<ResponseMatrix> response_matrices_from_csv(const std::string& text) {
  std::vector<ResponseMatrix> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty() || line[0] == '#') continue;
    ResponseMatrix rm;
    double m00, m01, m10, m11;
    if (sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf", &rm.qubit, &m00, &m01, &m10, &m11) != 5)
      throw std::invalid_argument("bad calibration line: " + line);
    rm.m << m00, m01, m10, m11;
    rm.validate();
    out.push_back(rm);
  }
  return out;
}

void inject_classical_errors(std::vector<BitVec>& bitstrings, double p_flip, Rng& rng) {
  if (p_flip < 0 || p_flip > 0.5)
    throw std::invalid_argument("p_flip must lie in [0, 1/2]");
  for (auto& s : bitstrings)
    for (size_t i = 0; i < s.size(); ++i)
      if (rng.bernoulli(p_flip)) s.flip(i);
}

double combined_rate(double p0, double p_flip) {
  return (1 - p0) * p_flip + (1 - p_flip) * p0;
}

}  // namespace telesurf
