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

#include "telesurf/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "telesurf/noise.hpp"
#include "telesurf/parallel.hpp"

namespace telesurf {

namespace {
constexpr double kPi = std::numbers::pi;
}

void SweepSpec::validate() const {
  if (t_grid.empty() || distances.empty()) throw std::invalid_argument("empty sweep grid");
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
}

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepTable table;
  size_t point_index = 0;
  for (int d : spec.distances) {
    CodeLayout lay = build_layout(d);
    for (double t : spec.t_grid) {
      SweepRow row{};
      row.theta = spec.theta;
      row.d = d;
      row.shots = spec.shots;
      if (spec.direct_q) {
        // the swept knob is q itself; t_eff is its inverse image
        row.q = t;
        row.t = t;
        const bool diagonal = std::abs(spec.theta - kPi / 4) < 1e-9;
        row.t_eff = std::asin(std::sqrt(std::clamp(diagonal ? 2 * t : t, 0.0, 1.0)));
      } else {
        row.t = t;
        row.t_eff = effective_entangling(spec.theta, t, spec.p);
        row.q = syndrome_flip_rate(spec.theta, row.t_eff);
      }

      // the likelihood prior needs q strictly inside (0, 1/2); at q = 1/2 the
      // classes weigh equally and any decision yields the same coin toss
      const double prior = std::min(row.q, 0.499999);
      std::vector<int8_t> flips(spec.shots);
      const uint64_t base_stream = point_index * spec.shots;
      parallel_for(spec.shots, [&](uint64_t shot) {
        Rng rng(spec.seed, base_stream + shot);
        ErrorPattern err = sample_error(lay, row.q, rng);
        int flip;
        if (row.q <= 0) {
          flip = logical_parity(lay, err);  // no decoding needed at q = 0
        } else if (spec.decoder == DecoderKind::Ml) {
          DecodeResult res = decode_coset_ml(lay, syndrome_of(lay, err), prior);
          flip = logical_parity(lay, err) ^ res.logical_flip;
        } else {
          DecodeResult res = decode_mwpm(lay, syndrome_of(lay, err), prior);
          flip = logical_parity(lay, err) ^ res.logical_flip;
        }
        flips[shot] = static_cast<int8_t>(flip);
      });
      uint64_t failures = 0;
      for (auto f : flips) failures += f;
      row.p_l = static_cast<double>(failures) / static_cast<double>(spec.shots);
      row.stderr_ = std::sqrt(row.p_l * (1 - row.p_l) / static_cast<double>(spec.shots));
      table.push_back(row);
      ++point_index;
    }
  }
  return table;
}

std::string sweep_to_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "theta,t,t_eff,q,d,shots,p_l,stderr\n";
  out.precision(12);
  for (const auto& r : table)
    out << r.theta << ',' << r.t << ',' << r.t_eff << ',' << r.q << ',' << r.d << ','
        << r.shots << ',' << r.p_l << ',' << r.stderr_ << "\n";
  return out.str();
}

SweepTable sweep_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty sweep CSV");
  SweepTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SweepRow r{};
    unsigned long long shots = 0;
    if (sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%d,%llu,%lf,%lf", &r.theta, &r.t, &r.t_eff,
               &r.q, &r.d, &shots, &r.p_l, &r.stderr_) != 8)
      throw std::invalid_argument("bad sweep CSV line: " + line);
    r.shots = shots;
    table.push_back(r);
  }
  return table;
}

std::string sweep_to_plot_data(const SweepTable& table, bool x_is_q) {
  std::ostringstream out;
  out << "x,y,yerr,series\n";
  out.precision(12);
  for (const auto& r : table)
    out << (x_is_q ? r.q : r.t_eff) << ',' << r.p_l << ',' << r.stderr_ << ',' << r.d << "\n";
  return out.str();
}

namespace {

// weighted fit of p_l against x = (t - t_c) d^{1/nu}: quadratic scaling
// polynomial plus the leading correction-to-scaling term c3 d^{-omega},
// which absorbs the small-distance crossing drift
double collapse_chi2(const SweepTable& rows, double t_c, double nu, double omega,
                     std::vector<double>* coeffs) {
  Eigen::Matrix4d ata = Eigen::Matrix4d::Zero();
  Eigen::Vector4d atb = Eigen::Vector4d::Zero();
  for (const auto& r : rows) {
    const double x = (r.t - t_c) * std::pow(r.d, 1.0 / nu);
    const double sigma = std::max(r.stderr_, 1e-6);
    Eigen::Vector4d basis(1.0, x, x * x, std::pow(r.d, -omega));
    ata += basis * basis.transpose() / (sigma * sigma);
    atb += basis * r.p_l / (sigma * sigma);
  }
  Eigen::Vector4d c = ata.ldlt().solve(atb);
  double chi2 = 0;
  for (const auto& r : rows) {
    const double x = (r.t - t_c) * std::pow(r.d, 1.0 / nu);
    const double sigma = std::max(r.stderr_, 1e-6);
    const double model = c(0) + c(1) * x + c(2) * x * x + c(3) * std::pow(r.d, -omega);
    chi2 += (r.p_l - model) * (r.p_l - model) / (sigma * sigma);
  }
  if (coeffs) *coeffs = {c(0), c(1), c(2), c(3)};
  return chi2;
}

struct GridBest {
  double t_c = 0, nu = 1.5, omega = 1.0, chi2 = 1e300;
};

GridBest collapse_search(const SweepTable& rows, double t_lo, double t_hi) {
  GridBest best;
  const int nt = 81, nn = 26, nw = 7;
  for (int i = 0; i <= nt; ++i) {
    double t_c = t_lo + (t_hi - t_lo) * i / nt;
    for (int j = 0; j <= nn; ++j) {
      double nu = 0.5 + 2.5 * j / nn;
      for (int k = 0; k <= nw; ++k) {
        double omega = 0.75 + 1.75 * k / nw;
        double chi2 = collapse_chi2(rows, t_c, nu, omega, nullptr);
        if (chi2 < best.chi2) best = {t_c, nu, omega, chi2};
      }
    }
  }
  // pattern refinement with diagonal moves; the chi^2 valley couples the
  // parameters, so axis-only steps stall
  double dt = (t_hi - t_lo) / nt, dnu = 2.5 / nn, dw = 2.0 / nw;
  for (int round = 0; round < 200; ++round) {
    bool improved = false;
    for (int mt = -1; mt <= 1; ++mt) {
      for (int mn = -1; mn <= 1; ++mn) {
        for (int mw = -1; mw <= 1; ++mw) {
          if (mt == 0 && mn == 0 && mw == 0) continue;
          double t_c = best.t_c + mt * dt;
          double nu = best.nu + mn * dnu;
          double omega = best.omega + mw * dw;
          // omega below ~0.75 degenerates with the constant coefficient
          if (nu < 0.2 || nu > 5 || omega < 0.75 || omega > 2.5) continue;
          double chi2 = collapse_chi2(rows, t_c, nu, omega, nullptr);
          if (chi2 < best.chi2) {
            best = {t_c, nu, omega, chi2};
            improved = true;
          }
        }
      }
    }
    if (!improved) {
      dt /= 2;
      dnu /= 2;
      dw /= 2;
      if (dt < 1e-8 && dnu < 1e-5) break;
    }
  }
  return best;
}

}  // namespace

ScalingFit fss_fit(const SweepTable& table, int bootstrap, uint64_t seed) {
  std::vector<int> ds;
  std::vector<double> ts;
  for (const auto& r : table) {
    if (std::find(ds.begin(), ds.end(), r.d) == ds.end()) ds.push_back(r.d);
    if (std::find(ts.begin(), ts.end(), r.t) == ts.end()) ts.push_back(r.t);
  }
  if (ds.size() < 3) throw std::invalid_argument("scaling fit needs at least 3 distances");
  if (ts.size() < 5) throw std::invalid_argument("scaling fit needs at least 5 grid points");

  const auto [t_lo_it, t_hi_it] = std::minmax_element(ts.begin(), ts.end());
  const double t_lo = *t_lo_it, t_hi = *t_hi_it;

  GridBest best = collapse_search(table, t_lo, t_hi);

  ScalingFit fit;
  fit.t_c = best.t_c;
  fit.nu = best.nu;
  fit.omega = best.omega;
  fit.chi2 = best.chi2;
  fit.n_points = static_cast<int>(table.size());
  collapse_chi2(table, best.t_c, best.nu, best.omega, &fit.coeffs);
  const double edge = (t_hi - t_lo) / 80.0;
  fit.boundary_hit = (best.t_c <= t_lo + edge) || (best.t_c >= t_hi - edge);

  std::vector<double> tc_samples, nu_samples;
  Rng rng(seed);
  for (int b = 0; b < bootstrap; ++b) {
    SweepTable resampled = table;
    for (auto& r : resampled) {
      // gaussian resample via Box-Muller
      double u1 = std::max(1e-12, rng.next_double()), u2 = rng.next_double();
      double gauss = std::sqrt(-2 * std::log(u1)) * std::cos(2 * kPi * u2);
      r.p_l = std::clamp(r.p_l + gauss * r.stderr_, 0.0, 1.0);
    }
    GridBest bb = collapse_search(resampled, t_lo, t_hi);
    tc_samples.push_back(bb.t_c);
    nu_samples.push_back(bb.nu);
  }
  auto stddev = [](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double acc = 0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
  };
  fit.t_c_err = stddev(tc_samples);
  fit.nu_err = stddev(nu_samples);
  return fit;
}

TomographyFit fit_logical_asymmetry(const std::vector<double>& theta_l,
                                    const std::vector<double>& x_vals,
                                    const std::vector<double>& z_vals) {
  if (theta_l.size() < 3 || theta_l.size() != x_vals.size() ||
      theta_l.size() != z_vals.size())
    throw std::invalid_argument("need at least 3 angles with matching x/z values");

  auto one_axis = [&](const std::vector<double>& vals, bool use_sin, double* err) {
    double num = 0, den = 0;
    for (size_t i = 0; i < theta_l.size(); ++i) {
      double s = use_sin ? std::sin(theta_l[i]) : std::cos(theta_l[i]);
      num += vals[i] * s;
      den += s * s;
    }
    if (den < 1e-12) throw std::invalid_argument("degenerate angle set");
    double slope = num / den;
    double rss = 0;
    for (size_t i = 0; i < theta_l.size(); ++i) {
      double s = use_sin ? std::sin(theta_l[i]) : std::cos(theta_l[i]);
      rss += (vals[i] - slope * s) * (vals[i] - slope * s);
    }
    double sigma2 = theta_l.size() > 1 ? rss / static_cast<double>(theta_l.size() - 1) : 0.0;
    *err = std::sqrt(sigma2 / den);
    return slope;
  };

  TomographyFit fit;
  double err_x = 0, err_z = 0;
  double slope_x = one_axis(x_vals, true, &err_x);   // 1 - 2 p_z
  double slope_z = one_axis(z_vals, false, &err_z);  // 1 - 2 p_x
  fit.p_z = (1 - slope_x) / 2;
  fit.p_z_err = err_x / 2;
  fit.p_x = (1 - slope_z) / 2;
  fit.p_x_err = err_z / 2;
  return fit;
}

double logical_fidelity(double theta_l, double x, double z) {
  return (1 + std::cos(theta_l) * z + std::sin(theta_l) * x) / 2;
}

double parse_angle(const std::string& token) {
  std::string s = token;
  double factor = 1.0;
  auto pos = s.find("pi");
  if (pos != std::string::npos) {
    factor = kPi;
    s.erase(pos, 2);
    if (s.empty() || s == "+") s = "1";
    if (s == "-") s = "-1";
    // allow forms like pi/2
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      double numer = (slash == 0) ? 1.0 : std::stod(s.substr(0, slash));
      double denom = std::stod(s.substr(slash + 1));
      return factor * numer / denom;
    }
  }
  return factor * std::stod(s);
}

std::vector<double> parse_grid(const std::string& token) {
  std::vector<double> out;
  std::stringstream ss(token);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    auto c1 = part.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_angle(part));
      continue;
    }
    auto c2 = part.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("range needs lo:hi:step");
    double lo = parse_angle(part.substr(0, c1));
    double hi = parse_angle(part.substr(c1 + 1, c2 - c1 - 1));
    double step = parse_angle(part.substr(c2 + 1));
    if (step <= 0) throw std::invalid_argument("range step must be positive");
    for (double v = lo; v <= hi + step / 2; v += step) out.push_back(v);
  }
  return out;
}

SweepSpec sweep_spec_from_config(const std::string& text) {
  SweepSpec spec;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto strip = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      auto end = s.find_last_not_of(" \t\r");
      s.erase(end == std::string::npos ? 0 : end + 1);
      return s;
    };
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (key == "theta") spec.theta = parse_angle(val);
    else if (key == "t_grid") spec.t_grid = parse_grid(val);
    else if (key == "p") spec.p = std::stod(val);
    else if (key == "distances") {
      spec.distances.clear();
      for (double v : parse_grid(val)) spec.distances.push_back(static_cast<int>(v));
    } else if (key == "shots") spec.shots = std::stoull(val);
    else if (key == "decoder") {
      if (val == "ml") spec.decoder = DecoderKind::Ml;
      else if (val == "mwpm") spec.decoder = DecoderKind::Mwpm;
      else throw std::invalid_argument("decoder must be ml or mwpm");
    } else if (key == "seed") spec.seed = std::stoull(val);
    else if (key == "direct_q") spec.direct_q = (val == "1" || val == "true");
    else throw std::invalid_argument("unknown config key: " + key);
  }
  return spec;
}

}  // namespace telesurf
