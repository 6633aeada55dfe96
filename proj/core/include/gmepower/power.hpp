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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gmepower/gate_spec.hpp"
#include "gmepower/quantum_core.hpp"
#include "gmepower/separable.hpp"

namespace gmepower {

struct OptimizerConfig {
  int restarts = 50;  // per layout
  int max_iters = 500;
  double step_tol = 1e-6;
  double value_tol = 1e-8;
  double ent_floor = kDefaultEntFloor;
  std::uint64_t seed = 1;
  bool freeze_phases = false;
  /// Restricts the search for the classes these layouts belong to; classes
  /// not named here use every layout.
  std::vector<Layout> layouts;
  /// Workers for the restarts of one max_power call; 0 means all cores.
  int threads = 1;

  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

/// Throws std::invalid_argument on restarts < 1, max_iters < 1, non-positive
/// tolerances or a negative floor.
void validate(const OptimizerConfig& cfg);

/// Phase freezing that suits each family by default: on for diag-one-phase,
/// whose power does not depend on input phases, off otherwise.
bool default_freeze_phases(GateFamily family);

struct OptimizationResult {
  double g_max = 0.0;
  KSeparableParams best_params;
  StateVector best_input = StateVector::basis(1, 0);
  StateVector best_output = StateVector::basis(1, 0);
  Layout layout_chosen;
  int starts_total = 0;
  int starts_converged = 0;
  /// Some entangled block of the optimal input sits below 2 * ent_floor.
  bool boundary_flag = false;
  /// False when no local search met its tolerances; g_max is then the best
  /// value seen.
  bool converged = false;
};

/// Largest GGM of U|psi> over |psi> in the k-separable class, by multi-start
/// Nelder-Mead over every layout. Inputs whose entangled blocks fall below
/// cfg.ent_floor are penalized during the search and never reported. The
/// result is bit-identical for a fixed cfg regardless of cfg.threads.
OptimizationResult max_power(const UnitaryMatrix& u, int k, const OptimizerConfig& cfg);

/// Same search restricted to one layout.
OptimizationResult max_power(const UnitaryMatrix& u, const Layout& layout, const OptimizerConfig& cfg);

struct CurvePoint {
  double param = 0.0;
  int k = 0;
  double g_max = 0.0;
  bool boundary_flag = false;
};

/// Sweeps params[param_index] of `gate` over `values`; one point per (value,
/// k), value-major. Points run in parallel on `threads` workers.
std::vector<CurvePoint> max_power_curve(const GateSpec& gate, int param_index, std::span<const double> values,
                                        std::span<const int> ks, const OptimizerConfig& cfg, int threads = 0);

struct SliceRow {
  double jx = 0.0, jy = 0.0, jz = 0.0;
  double g_max = 0.0;
  bool boundary_flag = false;
};

/// Evaluates a three-coupling family (usp1 or usp3) on the product grid
/// jx x jy x jz, jx slowest.
std::vector<SliceRow> max_power_slices(GateFamily family, std::span<const double> jx, std::span<const double> jy,
                                       std::span<const double> jz, int k, const OptimizerConfig& cfg,
                                       int threads = 0);

struct AverageResult {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

/// Monte Carlo mean of G(U|psi>) over Haar-random |psi> in the k-separable
/// class. Each sample draws its layout uniformly from enumerate_layouts.
AverageResult average_power(const UnitaryMatrix& u, int k, int num_samples, double ent_floor,
                            std::uint64_t seed, int threads = 0);

struct HistogramBin {
  double center = 0.0;
  double frequency = 0.0;
};

/// Equal-width, left-closed bins on [lo, hi]; values outside are clamped into
/// the end bins so hi itself lands in the last bin. Frequencies sum to 1.
std::vector<HistogramBin> histogram(std::span<const double> values, int bins = 50, double lo = 0.0,
                                    double hi = 0.5);

struct EnsembleStats {
  GateFamily family = GateFamily::kHaar;
  int k = 0;
  int num_ops = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  std::vector<HistogramBin> histogram;
};

struct EnsembleRecord {
  int op_index = 0;
  int k = 0;
  std::uint64_t op_seed = 0;
  GateSpec gate;
  double g_max = 0.0;
  bool boundary_flag = false;
};

struct EnsembleReport {
  std::vector<EnsembleStats> stats;  // one per k, in k_list order
  std::vector<EnsembleRecord> records;  // op-major
  int skipped = 0;
};

/// Draws num_ops operators of `family` (diag-general phases uniform on
/// [0, 2pi), or haar) on n parties, all seeded from cfg.seed, and computes
/// max_power for each k. Operators whose optimization throws are skipped and
/// counted. Standard deviation is the population one.
EnsembleReport ensemble_study(GateFamily family, int n, int num_ops, std::span<const int> ks,
                              const OptimizerConfig& cfg, int bins = 50, int threads = 0);

/// Exhaustive lower bound on the k-separable power: GGM of U|psi> on a grid
/// with `resolution` points per angle over [0, pi/2] (and per phase over
/// [0, 2pi) unless phases are frozen), keeping inputs that meet the floor.
/// Throws std::invalid_argument if more than 1e8 points would be needed.
double grid_oracle(const UnitaryMatrix& u, int k, int resolution, double ent_floor, bool freeze_phases = true);

}  // namespace gmepower
