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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "cvb/lab.hpp"

namespace cvb::lab {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string, std::less<>> kSections = {"experiment", "battery", "charger", "grid", "oracle", "output"};

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out)) {
    throw std::invalid_argument(fmt::format("{}: '{}' is not a number", key, v));
  }
  return out;
}

template <class Int>
Int to_int(std::string_view key, std::string_view v) {
  Int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw std::invalid_argument(fmt::format("{}: '{}' is not an integer", key, v));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c",
                                               "fig3d", "fig4a", "fig4b", "fig4c", "fig4d", "oracle-check",
                                               "appendixC"};
  return ids;
}

std::vector<int> default_modes() { return {2, 3, 4, 5, 6, 8, 10, 13, 16, 20, 25, 32, 40, 50}; }

std::vector<int> parse_modes(std::string_view text) {
  text = trim(text);
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const int lo = to_int<int>("modes", trim(text.substr(0, dots)));
    const int hi = to_int<int>("modes", trim(text.substr(dots + 2)));
    if (lo > hi) throw std::invalid_argument(fmt::format("modes: empty range {}..{}", lo, hi));
    for (int n = lo; n <= hi; ++n) out.push_back(n);
  } else {
    while (!text.empty()) {
      const auto comma = text.find(',');
      out.push_back(to_int<int>("modes", trim(text.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      text = text.substr(comma + 1);
    }
  }
  if (out.empty()) throw std::invalid_argument("modes: empty list");
  for (int n : out) {
    if (n < 1) throw std::invalid_argument(fmt::format("modes: {} is not a mode count", n));
  }
  return out;
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  std::string section;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument(fmt::format("line {}: unterminated section", line_no));
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!kSections.contains(name)) {
        throw std::invalid_argument(fmt::format("line {}: unknown section [{}]", line_no, name));
      }
      section = std::string(name);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument(fmt::format("line {}: expected key = value", line_no));
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument(fmt::format("line {}: empty key", line_no));
    std::string full = section.empty() ? std::string(key) : fmt::format("{}.{}", section, key);
    if (!out.emplace(full, std::string(value)).second) {
      throw std::invalid_argument(fmt::format("line {}: duplicate key '{}'", line_no, full));
    }
  }
  return out;
}

void apply_config(const std::map<std::string, std::string>& entries, ExperimentSpec& spec) {
  for (const auto& [full, value] : entries) {
    const auto dot = full.find('.');
    const std::string key = dot == std::string::npos ? full : full.substr(dot + 1);
    if (key == "experiment") {
      spec.experiment = value;
    } else if (key == "r") {
      spec.r = to_double(key, value);
    } else if (key == "delta_e" || key == "delta-e") {
      spec.delta_e = to_double(key, value);
    } else if (key == "charger") {
      spec.charger = charger_kind_from_string(value);
    } else if (key == "tau") {
      spec.tau = to_double(key, value);
    } else if (key == "tau2") {
      spec.tau2 = to_double(key, value);
    } else if (key == "grid") {
      spec.grid = to_int<int>(key, value);
    } else if (key == "modes") {
      spec.modes = parse_modes(value);
    } else if (key == "split") {
      spec.policy = split_policy_from_string(value);
    } else if (key == "out") {
      spec.out = value;
    } else if (key == "format") {
      spec.format = value;
    } else if (key == "cutoff") {
      spec.cutoff = to_int<int>(key, value);
    } else if (key == "cases") {
      spec.cases = to_int<int>(key, value);
    } else if (key == "seed") {
      spec.seed = to_int<std::uint64_t>(key, value);
    } else if (key == "tol") {
      spec.tol = to_double(key, value);
    } else if (key == "threads") {
      spec.threads = to_int<int>(key, value);
    } else {
      throw std::invalid_argument(fmt::format("unknown config key '{}'", full));
    }
  }
}

void validate(const ExperimentSpec& spec) {
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), spec.experiment) == ids.end()) {
    throw std::invalid_argument(fmt::format("unknown experiment '{}'", spec.experiment));
  }
  if (spec.r && *spec.r < 0.0) throw std::invalid_argument("r must be >= 0");
  if (spec.delta_e && *spec.delta_e < 0.0) throw std::invalid_argument("delta-e must be >= 0");
  for (const auto& t : {spec.tau, spec.tau2}) {
    if (t && (*t < 0.0 || *t > 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
  }
  if (spec.grid && *spec.grid < 1) throw std::invalid_argument("grid must be >= 1");
  if (spec.format != "csv" && spec.format != "json") {
    throw std::invalid_argument(fmt::format("format must be csv or json, got '{}'", spec.format));
  }
  if (spec.cutoff < 8) throw std::invalid_argument("cutoff must be >= 8");
  if (spec.cases < 1) throw std::invalid_argument("cases must be >= 1");
  if (!(spec.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (spec.threads < 0) throw std::invalid_argument("threads must be >= 0");
}

}  // namespace cvb::lab
