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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "telesurf/analysis.hpp"
#include "telesurf/coset_transfer.hpp"
#include "telesurf/decoder.hpp"
#include "telesurf/layout.hpp"
#include "telesurf/noise.hpp"
#include "telesurf/prep.hpp"
#include "telesurf/statmech.hpp"
#include "telesurf/teleport.hpp"

namespace {

using namespace telesurf;

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_layout(int d, const std::string& out) {
  CodeLayout lay = build_layout(d);
  validate_layout(lay);
  write_or_print(out, layout_to_json(lay) + "\n");
  return 0;
}

int run_prep_check(int d, const std::string& route, const std::string& out) {
  CodeLayout lay = build_layout(d);
  auto target = target_stabilizers(lay);
  Rng rng(1);
  bool ok = false;
  int depth = -1;
  CliffordCircuit circ;
  if (route == "measurement") {
    MeasurementPrep prep = build_prep_measurement(d, rng);
    ok = canonical_generators(target) == prep.tableau.canonical_stabilizers();
    std::cout << "route=measurement faces_flipped=" << prep.frame.face_flips.popcount()
              << " group_ok=" << (ok ? "yes" : "no") << "\n";
    return ok ? 0 : 1;
  }
  if (route == "unitary" || route == "mediated") {
    circ = build_prep_unitary(d, route == "mediated");
  } else if (route == "dual") {
    circ = build_prep_dual(d);
  } else {
    throw std::runtime_error("route must be unitary|mediated|dual|measurement");
  }
  depth = circ.two_qubit_depth();
  SimResult sim = simulate(circ, Tableau::zero_state(circ.n), rng);
  std::vector<PauliString> want;
  if (route == "unitary") {
    want = target;
  } else if (route == "mediated") {
    want = embed_paulis(target, 2 * d * d, 0);
    for (int m = d * d; m < 2 * d * d; ++m)
      want.push_back(PauliString::from_z_support(2 * d * d, {m}));
  } else {
    want = embed_paulis(target, 2 * d * d, 0);
    auto shifted = embed_paulis(target, 2 * d * d, d * d);
    want.insert(want.end(), shifted.begin(), shifted.end());
  }
  ok = canonical_generators(want) == sim.tableau.canonical_stabilizers();
  std::cout << "route=" << route << " two_qubit_depth=" << depth
            << " group_ok=" << (ok ? "yes" : "no") << "\n";
  if (!out.empty()) write_or_print(out, circuit_to_text(circ));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"surface-code teleportation workbench"};
  app.require_subcommand(1);

  // ---- layout ----
  auto* layout_cmd = app.add_subcommand("layout", "export the code layout as JSON");
  int layout_d = 3;
  std::string layout_out;
  layout_cmd->add_option("--distance", layout_d, "code distance")->required();
  layout_cmd->add_option("--out", layout_out, "output path (default stdout)");

  // ---- prep-check ----
  auto* prep_cmd = app.add_subcommand("prep-check", "verify a preparation route");
  int prep_d = 3;
  std::string prep_route = "unitary", prep_out;
  prep_cmd->add_option("--distance", prep_d)->required();
  prep_cmd->add_option("--route", prep_route, "unitary|mediated|dual|measurement");
  prep_cmd->add_option("--out", prep_out, "write the circuit text here");

  // ---- oracle ----
  auto* oracle_cmd = app.add_subcommand("oracle", "sample teleported readouts (dense, d<=3)");
  int oracle_d = 2;
  std::string oracle_theta = "pi/2";
  double oracle_t = 0, oracle_p = 0, oracle_theta_l = 0;
  uint64_t oracle_shots = 1000, oracle_seed = 0;
  std::string oracle_out;
  oracle_cmd->add_option("--distance", oracle_d)->required();
  oracle_cmd->add_option("--theta", oracle_theta, "pi/2 or pi/4");
  oracle_cmd->add_option("--t", oracle_t, "entangling detuning (radians)");
  oracle_cmd->add_option("--p", oracle_p, "incoherent bit-flip rate");
  oracle_cmd->add_option("--theta-l", oracle_theta_l, "logical polar angle (radians)");
  oracle_cmd->add_option("--shots", oracle_shots);
  oracle_cmd->add_option("--seed", oracle_seed);
  oracle_cmd->add_option("--out", oracle_out);

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo logical error rates");
  std::string sweep_theta = "pi/2", sweep_tgrid, sweep_dists = "3,5,7";
  double sweep_p = 0;
  uint64_t sweep_shots = 10000, sweep_seed = 0;
  std::string sweep_decoder = "ml", sweep_out, sweep_config, sweep_plot;
  bool sweep_direct_q = false;
  std::string sweep_format = "csv";
  sweep_cmd->add_option("--theta", sweep_theta, "pi/2 or pi/4");
  sweep_cmd->add_option("--t-grid", sweep_tgrid, "comma list or lo:hi:step, pi suffix ok");
  sweep_cmd->add_option("--p", sweep_p, "incoherent rate");
  sweep_cmd->add_option("--distances", sweep_dists, "comma list of code distances");
  sweep_cmd->add_option("--shots", sweep_shots);
  sweep_cmd->add_option("--decoder", sweep_decoder, "ml or mwpm");
  sweep_cmd->add_option("--seed", sweep_seed);
  sweep_cmd->add_option("--out", sweep_out);
  sweep_cmd->add_option("--format", sweep_format, "csv or json");
  sweep_cmd->add_option("--config", sweep_config, "key=value spec file");
  sweep_cmd->add_option("--emit-plot-data", sweep_plot, "write x,y,yerr,series file");
  sweep_cmd->add_flag("--direct-q", sweep_direct_q, "t-grid holds decoder rates q");

  // ---- decode ----
  auto* decode_cmd = app.add_subcommand("decode", "batch-decode a bitstring file");
  std::string decode_in, decode_out, decode_decoder = "ml";
  double decode_q = 0.05;
  decode_cmd->add_option("--in", decode_in)->required();
  decode_cmd->add_option("--q", decode_q, "bit-flip rate for the decoder prior");
  decode_cmd->add_option("--decoder", decode_decoder, "ml or mwpm");
  decode_cmd->add_option("--out", decode_out);

  // ---- fss ----
  auto* fss_cmd = app.add_subcommand("fss", "finite-size-scaling fit of a sweep CSV");
  std::string fss_in, fss_out;
  fss_cmd->add_option("--in", fss_in)->required();
  fss_cmd->add_option("--out", fss_out);

  // ---- renyi ----
  auto* renyi_cmd = app.add_subcommand("renyi", "exact Ising relative entropy");
  std::string renyi_l = "4,8,12,16", renyi_p = "0.2:0.35:0.01", renyi_out;
  bool renyi_crossing = false;
  renyi_cmd->add_option("--sizes", renyi_l, "comma list of lattice sizes");
  renyi_cmd->add_option("--p-grid", renyi_p);
  renyi_cmd->add_option("--out", renyi_out);
  renyi_cmd->add_flag("--crossing", renyi_crossing, "also report pairwise crossings");

  // ---- bell ----
  auto* bell_cmd = app.add_subcommand("bell", "swap-measurement purity estimate");
  int bell_d = 2;
  double bell_q = 0.01;
  std::string bell_kind = "same", bell_out;
  uint64_t bell_shots = 40000, bell_seed = 0;
  bell_cmd->add_option("--distance", bell_d)->required();
  bell_cmd->add_option("--q", bell_q, "X and Z flip rate per qubit per code");
  bell_cmd->add_option("--kind", bell_kind, "same or orthogonal");
  bell_cmd->add_option("--shots", bell_shots);
  bell_cmd->add_option("--seed", bell_seed);
  bell_cmd->add_option("--out", bell_out);

  // ---- mitigate ----
  auto* mit_cmd = app.add_subcommand("mitigate", "readout-corrected face parity");
  std::string mit_cal, mit_counts, mit_out;
  mit_cmd->add_option("--calibration", mit_cal, "response matrices (json or csv)")->required();
  mit_cmd->add_option("--counts", mit_counts, "comma list of 2^w outcome counts")->required();
  mit_cmd->add_option("--out", mit_out);

  // ---- fit-tomo ----
  auto* tomo_cmd = app.add_subcommand("fit-tomo", "fit asymmetric logical error rates");
  std::string tomo_in, tomo_out;
  tomo_cmd->add_option("--in", tomo_in, "CSV theta_l,x,z")->required();
  tomo_cmd->add_option("--out", tomo_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*layout_cmd) return run_layout(layout_d, layout_out);
    if (*prep_cmd) return run_prep_check(prep_d, prep_route, prep_out);

    if (*oracle_cmd) {
      TeleportConfig cfg{parse_angle(oracle_theta), 0, oracle_t, oracle_p};
      LogicalTarget target{oracle_theta_l, 0};
      BitstringBatch batch =
          sample_teleported_bitstrings(oracle_d, cfg, target, oracle_shots, oracle_seed);
      write_or_print(oracle_out, bitstrings_to_text(batch));
      return 0;
    }

    if (*sweep_cmd) {
      SweepSpec spec;
      if (!sweep_config.empty()) {
        spec = sweep_spec_from_config(read_file(sweep_config));
      } else {
        spec.theta = parse_angle(sweep_theta);
        spec.t_grid = parse_grid(sweep_tgrid);
        spec.p = sweep_p;
        for (double v : parse_grid(sweep_dists)) spec.distances.push_back(static_cast<int>(v));
        spec.shots = sweep_shots;
        spec.decoder = (sweep_decoder == "mwpm") ? DecoderKind::Mwpm : DecoderKind::Ml;
        spec.seed = sweep_seed;
        spec.direct_q = sweep_direct_q;
      }
      SweepTable table = run_sweep(spec);
      if (sweep_format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : table)
          j.push_back({{"theta", r.theta}, {"t", r.t}, {"t_eff", r.t_eff}, {"q", r.q},
                       {"d", r.d}, {"shots", r.shots}, {"p_l", r.p_l}, {"stderr", r.stderr_}});
        write_or_print(sweep_out, j.dump(2) + "\n");
      } else {
        write_or_print(sweep_out, sweep_to_csv(table));
      }
      if (!sweep_plot.empty()) write_or_print(sweep_plot, sweep_to_plot_data(table, true));
      return 0;
    }

    if (*decode_cmd) {
      BitstringBatch batch = bitstrings_from_text(read_file(decode_in));
      CodeLayout lay = build_layout(batch.d);
      DecoderKind kind = (decode_decoder == "mwpm") ? DecoderKind::Mwpm : DecoderKind::Ml;
      write_or_print(decode_out, decode_batch_csv(lay, batch, decode_q, kind));
      return 0;
    }

    if (*fss_cmd) {
      SweepTable table = sweep_from_csv(read_file(fss_in));
      ScalingFit fit = fss_fit(table);
      nlohmann::json j{{"t_c", fit.t_c},     {"t_c_err", fit.t_c_err},
                       {"nu", fit.nu},       {"nu_err", fit.nu_err},
                       {"chi2", fit.chi2},   {"n_points", fit.n_points},
                       {"coeffs", fit.coeffs}, {"boundary_hit", fit.boundary_hit}};
      write_or_print(fss_out, j.dump(2) + "\n");
      return fit.boundary_hit ? 1 : 0;
    }

    if (*renyi_cmd) {
      std::vector<int> sizes;
      for (double v : parse_grid(renyi_l)) sizes.push_back(static_cast<int>(v));
      std::vector<double> ps = parse_grid(renyi_p);
      std::ostringstream out;
      out << "L,p,D2\n";
      out.precision(12);
      for (int L : sizes)
        for (double p : ps) out << L << ',' << p << ',' << ising_relative_entropy(L, p) << "\n";
      if (renyi_crossing) {
        for (size_t i = 0; i + 1 < sizes.size(); ++i) {
          double pc = ising_crossing(sizes[i], sizes[i + 1], ps.front(), ps.back());
          out << "# crossing L=" << sizes[i] << "/" << sizes[i + 1] << " p=" << pc << "\n";
        }
      }
      write_or_print(renyi_out, out.str());
      return 0;
    }

    if (*bell_cmd) {
      PairKind kind = (bell_kind == "orthogonal") ? PairKind::Orthogonal : PairKind::Same;
      PurityEstimate est = simulate_bell_experiment(bell_d, bell_q, kind, bell_shots, bell_seed);
      std::ostringstream out;
      out << "d,q,kind,purity,stderr,shots\n"
          << bell_d << ',' << bell_q << ',' << bell_kind << ',' << est.value << ','
          << est.stderr_ << ',' << est.shots << "\n";
      write_or_print(bell_out, out.str());
      return 0;
    }

    if (*mit_cmd) {
      std::string cal = read_file(mit_cal);
      std::vector<ResponseMatrix> ms;
      if (mit_cal.size() > 5 && mit_cal.substr(mit_cal.size() - 5) == ".json")
        ms = response_matrices_from_json(cal);
      else
        ms = response_matrices_from_csv(cal);
      std::vector<double> counts;
      for (double v : parse_grid(mit_counts)) counts.push_back(v);
      MitigationResult res = mitigate_readout(counts, ms);
      std::ostringstream out;
      out << "parity,in_range\n" << res.parity << ',' << (res.in_range ? 1 : 0) << "\n";
      write_or_print(mit_out, out.str());
      return 0;
    }

    if (*tomo_cmd) {
      std::istringstream in(read_file(tomo_in));
      std::string line;
      std::vector<double> th, xs, zs;
      bool first = true;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.find("theta") != std::string::npos) {
          first = false;
          continue;
        }
        first = false;
        double a, b, c;
        if (sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
          throw std::runtime_error("bad tomography CSV line: " + line);
        th.push_back(a);
        xs.push_back(b);
        zs.push_back(c);
      }
      TomographyFit fit = fit_logical_asymmetry(th, xs, zs);
      nlohmann::json j{{"p_x", fit.p_x},
                       {"p_x_err", fit.p_x_err},
                       {"p_z", fit.p_z},
                       {"p_z_err", fit.p_z_err}};
      write_or_print(tomo_out, j.dump(2) + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
