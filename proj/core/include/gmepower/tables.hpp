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
#include <string>
#include <vector>

#include "gmepower/power.hpp"
#include "gmepower/quantum_core.hpp"

namespace gmepower {

/// Table I: transpositions that reach GGM 1/2 from fully separable inputs.
/// Table II: transpositions that reach it from biseparable inputs.
enum class TranspositionTable { kI, kII };

struct TableEntry {
  int number = 0;
  int i = 0, j = 0;
  /// The listed input (|a> + |b>)/sqrt(2).
  std::string ket_a, ket_b;
};

const std::vector<TableEntry>& table_entries(TranspositionTable table);

struct TableRowReport {
  TableEntry entry;
  StateVector output = StateVector::basis(1, 0);
  double ggm = 0.0;
  bool row_pass = false;
  /// Optimum over the other input class: k = 2 for Table I, k = 3 for II.
  std::optional<double> optimum;
  std::optional<bool> optimum_pass;
};

struct TableReport {
  TranspositionTable table = TranspositionTable::kI;
  int optimum_k = 0;
  std::vector<TableRowReport> rows;
  int rows_passed = 0;
  int optima_passed = 0;
  bool all_pass() const;
};

/// Checks every row's listed input gives GGM 1/2 (to 1e-10). With
/// `run_optimizer`, also checks the optimum over the other class: for
/// Table I the biseparable optimum must stay below 0.5 - 1e-3, for Table II
/// the fully separable optimum must be 0.33 +- 0.01 and below 1/2.
TableReport verify_table(TranspositionTable table, bool run_optimizer, const OptimizerConfig& cfg, int threads = 0);

}  // namespace gmepower
