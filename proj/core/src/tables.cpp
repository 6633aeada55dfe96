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


#include "gmepower/tables.hpp"

#include <cmath>

#include "gmepower/gates.hpp"
#include "gmepower/ggm.hpp"
#include "gmepower/parallel.hpp"

namespace gmepower {

namespace {

constexpr double kRowTol = 1e-10;
constexpr double kTableIMargin = 1e-3;
constexpr double kPlateau = 0.33;
constexpr double kPlateauTol = 0.01;

StateVector listed_input(const TableEntry& e) {
  return StateVector::normalized(StateVector::from_bits(e.ket_a).amplitudes() +
                                 StateVector::from_bits(e.ket_b).amplitudes());
}

}  // namespace

const std::vector<TableEntry>& table_entries(TranspositionTable table) {
  static const std::vector<TableEntry> kTableI = {
      {1, 1, 4, "011", "111"},  {2, 1, 6, "101", "111"},  {3, 1, 7, "110", "111"},
      {4, 2, 3, "001", "101"},  {5, 2, 5, "100", "110"},  {6, 2, 8, "110", "111"},
      {7, 3, 5, "100", "101"},  {8, 3, 8, "101", "111"},  {9, 4, 6, "100", "101"},
      {10, 4, 7, "100", "110"}, {11, 5, 8, "000", "100"}, {12, 6, 7, "001", "101"},
  };
  static const std::vector<TableEntry> kTableII = {
      {1, 1, 2, "000", "110"},  {2, 1, 3, "000", "101"},  {3, 1, 5, "000", "011"},
      {4, 2, 4, "001", "100"},  {5, 2, 6, "001", "010"},  {6, 3, 4, "010", "100"},
      {7, 3, 7, "001", "010"},  {8, 4, 8, "000", "011"},  {9, 5, 6, "010", "100"},
      {10, 5, 7, "001", "100"}, {11, 6, 8, "000", "101"}, {12, 7, 8, "001", "111"},
  };
  return table == TranspositionTable::kI ? kTableI : kTableII;
}

bool TableReport::all_pass() const {
  const int n = static_cast<int>(rows.size());
  bool optima_ok = true;
  for (const auto& r : rows) optima_ok = optima_ok && r.optimum_pass.value_or(true);
  return rows_passed == n && optima_ok;
}

TableReport verify_table(TranspositionTable table, bool run_optimizer, const OptimizerConfig& cfg, int threads) {
  TableReport report;
  report.table = table;
  report.optimum_k = table == TranspositionTable::kI ? 2 : 3;
  const auto& entries = table_entries(table);
  report.rows.resize(entries.size());

  OptimizerConfig inner = cfg;
  inner.threads = 1;
  parallel_for(entries.size(), run_optimizer ? threads : 1, [&](std::size_t r) {
    const auto& e = entries[r];
    const auto u = transposition(e.i, e.j, 3);
    auto& row = report.rows[r];
    row.entry = e;
    row.output = apply_unitary(u, listed_input(e));
    row.ggm = ggm(row.output).value;
    row.row_pass = std::abs(row.ggm - 0.5) <= kRowTol;
    if (!run_optimizer) return;
    const double g = max_power(u, report.optimum_k, inner).g_max;
    row.optimum = g;
    row.optimum_pass = table == TranspositionTable::kI
                           ? g < 0.5 - kTableIMargin
                           : std::abs(g - kPlateau) <= kPlateauTol && g < 0.5;
  });
  for (const auto& row : report.rows) {
    report.rows_passed += row.row_pass ? 1 : 0;
    report.optima_passed += row.optimum_pass.value_or(false) ? 1 : 0;
  }
  return report;
}

}  // namespace gmepower
