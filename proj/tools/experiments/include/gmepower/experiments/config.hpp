// Copyright 2026 The gmepower Authors
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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmepower/gate_spec.hpp"
#include "gmepower/power.hpp"

namespace gmepower::experiments {

enum class Command { kGgm, kPowerMax, kPowerAvg, kScan, kSlices, kEnsemble, kVerifyTables };

std::string_view to_string(Command command);
Command parse_command(std::string_view name);

enum class OutputFormat { kCsv, kJson, kBoth };
/// auto picks default_freeze_phases(gate family).
enum class FreezeMode { kAuto, kOn, kOff };

/// `points` evenly spaced values from `from` to `to` inclusive.
struct Range {
  double from = 0.0;
  double to = 0.0;
  int points = 1;

  std::vector<double> values() const;
  friend bool operator==(const Range&, const Range&) = default;
};

/// Everything one run needs. Defaults describe a small three-qubit run.
struct ExperimentConfig {
  Command command = Command::kPowerMax;
  GateSpec gate{GateFamily::kDiagonalOnePhase, 3, {3.141592653589793}, std::nullopt};
  std::vector<int> ks{2, 3};
  OptimizerConfig optimizer;
  FreezeMode freeze = FreezeMode::kAuto;

  std::string state = "ghz3";

  std::string sweep_param = "phi";
  Range sweep{0.0, 3.141592653589793, 17};

  GateFamily slice_family = GateFamily::kUsp1;
  Range jx{0.0, 1.5707963267948966, 11};
  Range jy{0.0, 1.5707963267948966, 11};
  Range jz{0.0, 1.5707963267948966, 11};

  GateFamily ensemble_family = GateFamily::kHaar;
  int ensemble_parties = 3;
  int ensemble_ops = 500;
  int bins = 50;

  int samples = 10000;

  std::string tables = "both";
  bool rows_only = false;

  std::string output;
  OutputFormat format = OutputFormat::kBoth;
  int threads = 0;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Invalid configuration; `what()` names the source line or flag and the
/// offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reads an INI document:
///
///   [run]        command, k, output, format (csv|json|both), threads
///   [gate]       family, parties, params, seed
///   [optimizer]  restarts, max_iters, step_tol, value_tol, ent_floor, seed,
///                freeze_phases (auto|on|off), layouts ("0|12, 1|02")
///   [state]      name (ghzN, wN, or a ket over 0 1 + -, e.g. "+01")
///   [sweep]      param, from, to, points
///   [slices]     family, jx, jy, jz (each "from, to, points")
///   [ensemble]   family, parties, ops, bins
///   [average]    samples
///   [tables]     which (I|II|both), rows_only
///
/// Keys left out keep their defaults; `base` supplies them. Errors carry
/// "<source>:<line>: [section] key: reason".
ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>",
                              const ExperimentConfig& base = {});

/// Full resolved config as INI text; parse_config(to_ini(c)) == c.
std::string to_ini(const ExperimentConfig& config);

/// Cross-field checks (k range, sweep parameter, writable output...).
/// Throws ConfigError.
void validate(const ExperimentConfig& config);

/// Optimizer settings with the freeze mode applied for `family`.
OptimizerConfig resolved_optimizer(const ExperimentConfig& config, GateFamily family);

/// Index of a named parameter: "phi", "jx", "jy", "jz", "j4", or "pN".
int parameter_index(GateFamily family, std::string_view name, int n);

/// Named or ket-notation state as described for [state].
StateVector parse_state(std::string_view name);

std::vector<int> parse_int_list(std::string_view text);

}  // namespace gmepower::experiments
