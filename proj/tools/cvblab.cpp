// Copyright 2026 The cvbattery Authors
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

// cvblab: runs one experiment and writes its data, manifest and plot script.
//
//   cvblab --experiment fig2a --out results/fig2a
//   cvblab --config runs/fig4.ini --modes 2..20
//
// Exit status: 0 success, 1 usage error, 2 validation failure,
// 3 non-convergence.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cvb/lab.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument(fmt::format("cannot read config {}", path));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum battery experiment runner"};
  app.set_version_flag("--version", std::string(cvb::lab::version()));

  std::string config_path;
  std::string experiment;
  double r = 0.0;
  double delta_e = 0.0;
  std::string modes;
  std::string charger;
  double tau = 0.0;
  double tau2 = 0.0;
  int grid = 0;
  std::string split;
  std::string out;
  std::string format;
  int cutoff = 0;
  int cases = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int threads = 0;
  bool list = false;

  app.add_option("--config", config_path, "key = value file with [section] headers; flags override it");
  auto* o_exp = app.add_option("--experiment,-e", experiment, "fig2a..fig4d, oracle-check or appendixC");
  auto* o_r = app.add_option("--r", r, "initial squeezing; replaces the figure's default series");
  auto* o_de = app.add_option("--delta-e", delta_e, "total energy increment");
  auto* o_modes = app.add_option("--modes", modes, "fig4 mode numbers: 2,3,5 or 2..50");
  auto* o_ch = app.add_option("--charger", charger, "squeeze, displace or global-squeeze");
  auto* o_tau = app.add_option("--tau", tau, "pin tau (two-mode) or tau1 (three-mode)");
  auto* o_tau2 = app.add_option("--tau2", tau2, "pin tau2 (three-mode)");
  auto* o_grid = app.add_option("--grid", grid, "points per tau axis; appendixC grid side");
  auto* o_split = app.add_option("--split", split, "equal or free energy split");
  auto* o_out = app.add_option("--out,-o", out, "output path prefix; stdout when absent");
  auto* o_fmt = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* o_cut = app.add_option("--cutoff", cutoff, "largest one-mode oracle cutoff");
  auto* o_cases = app.add_option("--cases", cases, "oracle-check scenario count");
  auto* o_seed = app.add_option("--seed", seed, "seed for multistarts and scenario draws");
  auto* o_tol = app.add_option("--tol", tol, "oracle-check relative tolerance");
  auto* o_thr = app.add_option("--threads", threads, "worker threads, 0 for all cores");
  app.add_flag("--list", list, "print experiment ids and exit");

  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& id : cvb::lab::experiment_ids()) std::cout << id << '\n';
    return cvb::lab::kExitOk;
  }

  cvb::lab::ExperimentSpec spec;
  try {
    if (!config_path.empty()) cvb::lab::apply_config(cvb::lab::parse_config(read_file(config_path)), spec);
    if (o_exp->count()) spec.experiment = experiment;
    if (o_r->count()) spec.r = r;
    if (o_de->count()) spec.delta_e = delta_e;
    if (o_modes->count()) spec.modes = cvb::lab::parse_modes(modes);
    if (o_ch->count()) spec.charger = cvb::charger_kind_from_string(charger);
    if (o_tau->count()) spec.tau = tau;
    if (o_tau2->count()) spec.tau2 = tau2;
    if (o_grid->count()) spec.grid = grid;
    if (o_split->count()) spec.policy = cvb::split_policy_from_string(split);
    if (o_out->count()) spec.out = out;
    if (o_fmt->count()) spec.format = format;
    if (o_cut->count()) spec.cutoff = cutoff;
    if (o_cases->count()) spec.cases = cases;
    if (o_seed->count()) spec.seed = seed;
    if (o_tol->count()) spec.tol = tol;
    if (o_thr->count()) spec.threads = threads;
    cvb::lab::validate(spec);
  } catch (const std::exception& e) {
    std::cerr << "cvblab: " << e.what() << '\n';
    return 1;
  }

  try {
    const cvb::lab::Artifacts art = cvb::lab::run(spec);
    cvb::lab::write_artifacts(spec, art);
    for (const auto& d : art.diagnostics) std::cerr << "cvblab: " << d << '\n';
    return art.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "cvblab: " << e.what() << '\n';
    return cvb::lab::kExitValidation;
  }
}
