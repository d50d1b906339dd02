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

#pragma once

// Experiment runner: figure sweeps, the engine-vs-oracle validation suite and
// their CSV / JSON artifacts.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cvb/fock.hpp"
#include "cvb/merit.hpp"
#include "cvb/optimize.hpp"

namespace cvb::lab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNonConvergence = 3;

std::string_view version();

// --- tables ---------------------------------------------------------------------

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  /// Index of a column; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
  std::vector<double> numbers(std::string_view name) const;
};

/// Doubles use 12 significant digits; fields containing a comma, quote, CR or
/// LF are quoted with embedded quotes doubled. Lines end in "\n".
std::string format_cell(const Cell& c);
std::string to_csv(const Table& t);
/// Array of row objects keyed by column name.
nlohmann::json to_json(const Table& t);

// --- experiment spec --------------------------------------------------------------

/// One (r, total energy) pair of a figure.
struct Series {
  double r = 0.0;
  double delta_e = 0.0;
};

struct ExperimentSpec {
  std::string experiment;
  // Unset fields fall back to the experiment's defaults.
  std::optional<double> r;
  std::optional<double> delta_e;
  std::optional<ChargerKind> charger;
  std::optional<double> tau;   // pins tau (two-mode) or tau1 (three-mode)
  std::optional<double> tau2;  // pins tau2 (three-mode)
  std::optional<int> grid;     // points per tau axis; side of the appendixC grid
  std::vector<int> modes;      // mode numbers for fig4
  SplitPolicy policy = SplitPolicy::Equal;
  std::string out;  // output path prefix; empty writes the table to stdout
  std::string format = "csv";
  int cutoff = 1024;  // largest oracle cutoff tried for one-mode scenarios
  int cases = 200;    // oracle-check scenario count
  std::uint64_t seed = 1;
  double tol = 1e-6;  // oracle-check relative tolerance
  int threads = 0;
};

const std::vector<std::string>& experiment_ids();

/// Figure defaults, or the single pair given by spec.r / spec.delta_e.
std::vector<Series> series_for(const ExperimentSpec& spec);

/// Default fig4 mode numbers: log-spaced over [2, 50].
std::vector<int> default_modes();

/// Parses "2,3,5" or an inclusive range "2..50".
std::vector<int> parse_modes(std::string_view text);

/// Config file grammar (one statement per line):
///   [section]        section header, one of: experiment, battery, charger,
///                    grid, oracle, output
///   key = value      assignment inside the current section
///   # or ; comment   full-line comments; blank lines are ignored
/// Keys outside any section are accepted. A key may appear once.
/// Returns "section.key" -> value (or "key" at top level).
std::map<std::string, std::string> parse_config(std::string_view text);

/// Applies parsed config entries onto spec. Unknown keys throw
/// std::invalid_argument naming the line's key.
void apply_config(const std::map<std::string, std::string>& entries, ExperimentSpec& spec);

/// Throws std::invalid_argument on an unknown experiment or invalid values.
void validate(const ExperimentSpec& spec);

// --- validation suite ----------------------------------------------------------------

struct ValidationCase {
  std::string id;
  BatterySpec battery;
  ChargerKind kind = ChargerKind::LocalSqueeze;
  std::vector<double> strengths;
  std::vector<double> phases;
  int max_cutoff = 128;
};

/// Randomized scenarios over 1-3 modes, deterministic in seed. Counts are
/// split 45/35/20 percent over one, two and three modes; ranges narrow with
/// the mode count so that every case stays certifiable within its cap.
std::vector<ValidationCase> random_cases(int count, std::uint64_t seed, int one_mode_cutoff = 1024);

fock::Scenario to_scenario(const ValidationCase& c);

/// Engine moments in the oracle's layout.
fock::Moments engine_moments(const ValidationCase& c);

struct ValidationRow {
  std::string id;
  std::string quantity;
  double engine = 0.0;
  double oracle = 0.0;
  int cutoff = 0;
  double rel_err = 0.0;
  bool converged = false;
};

/// Relative error with denominator max(|oracle|, kRelFloor).
inline constexpr double kRelFloor = 1e-12;
double relative_error(double engine, double oracle);

/// Rows for <N_j> before and after charging, V0, V1, Cov and the
/// anticommutator of one case.
std::vector<ValidationRow> validate_case(const ValidationCase& c);
std::vector<ValidationRow> validate_cases(const std::vector<ValidationCase>& cases, int threads);
Table validation_table(const std::vector<ValidationRow>& rows);

// --- running --------------------------------------------------------------------------

struct Artifacts {
  Table table;
  nlohmann::json manifest;
  std::string plot_script;  // empty for oracle-check
  int exit_code = kExitOk;
  std::vector<std::string> diagnostics;
};

Artifacts run(const ExperimentSpec& spec);

/// Gnuplot script for one experiment's CSV, referring to csv_path as given.
std::string emit_plot_script(std::string_view experiment, std::string_view csv_path);

/// Writes <out>.csv or <out>.json, <out>.manifest.json and <out>.gp next to
/// each other; the script references the data file by its bare name.
void write_artifacts(const ExperimentSpec& spec, const Artifacts& artifacts);

}  // namespace cvb::lab
