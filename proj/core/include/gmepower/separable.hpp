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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmepower/quantum_core.hpp"

namespace gmepower {

/// Minimal block entanglement (1 - lambda_max units) required for strict
/// membership in the k-separable class.
inline constexpr double kDefaultEntFloor = 1e-2;
inline constexpr int kRejectionBudget = 10'000;

/// Partition of the parties into the tensor factors of a k-separable state.
/// Blocks are sorted and ordered by their smallest party, so equal layouts
/// compare equal.
struct Layout {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  int k() const { return static_cast<int>(blocks.size()); }
  /// Per block: 2^m - 1 polar angles and as many phases.
  int angle_count() const;
  int phase_count() const { return angle_count(); }
  /// "0|12"
  std::string label() const;

  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Sorts blocks and checks that they partition {0..n-1}.
Layout make_layout(int n, std::vector<std::vector<int>> blocks);
/// Parses "0|12" for an n-party system.
Layout parse_layout(std::string_view text, int n);
/// Every set partition of n parties into k blocks, in a fixed order: blocks
/// are generated by restricted-growth strings in lexicographic order.
std::vector<Layout> enumerate_layouts(int n, int k);

/// One point of a k-separable family. Angles and phases are concatenated
/// block by block in layout order.
struct KSeparableParams {
  Layout layout;
  std::vector<double> angles;
  std::vector<double> phases;
  double ent_floor = kDefaultEntFloor;

  int n() const { return layout.n; }
  int k() const { return layout.k(); }
};

/// Thrown when a block that should be entangled is (nearly) a product.
class EntFloorViolation : public std::runtime_error {
 public:
  EntFloorViolation(std::vector<int> block, double entanglement, double floor);
  std::span<const int> block() const { return block_; }
  double entanglement() const { return entanglement_; }

 private:
  std::vector<int> block_;
  double entanglement_;
};

/// Thrown when the sampler cannot satisfy the entanglement floor.
class RejectionBudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hyperspherical block amplitudes:
///   a_0 = cos t_1,
///   a_j = e^{i xi_j} sin t_1 ... sin t_j cos t_{j+1},
///   a_{d-1} = e^{i xi_{d-1}} sin t_1 ... sin t_{d-1}.
/// `out.size()` is the block dimension d; angles and phases hold d - 1 values.
void hyperspherical_amplitudes(std::span<const double> angles, std::span<const double> phases,
                               std::span<Complex> out);

/// Inverse of hyperspherical_amplitudes up to global phase: angles land in
/// [0, pi/2], phases in [0, 2pi).
void hyperspherical_coordinates(std::span<const Complex> amplitudes, std::span<double> angles,
                                std::span<double> phases);

/// Builds the product state without any checks. `phases` may be empty, which
/// means all phases are zero. `out` must hold 2^n amplitudes.
void realize_into(const Layout& layout, std::span<const double> angles, std::span<const double> phases,
                  std::span<Complex> out);

/// Smallest entanglement over the non-singleton blocks, measured as the GGM of
/// each block state (for a pair this is 1 - lambda_max). Returns 1 when every
/// block is a single party.
double min_block_entanglement(const Layout& layout, std::span<const double> angles,
                              std::span<const double> phases);

/// Validated construction. Throws std::invalid_argument on arity mismatch and
/// EntFloorViolation naming the first block below `ent_floor`.
StateVector realize(const KSeparableParams& params);

/// Canonical coordinates of a state that factorizes according to `layout`.
/// Throws std::invalid_argument if it does not (to 1e-8).
KSeparableParams params_from_state(const Layout& layout, const StateVector& psi, double ent_floor);

/// Haar-random point of the class: every block is a normalized vector of
/// independent standard complex Gaussians, redrawn until the entanglement
/// floor holds. With no layout given, one is drawn uniformly from
/// enumerate_layouts(n, k). Deterministic in `seed`.
KSeparableParams sample_uniform(int n, int k, std::optional<Layout> layout, double ent_floor,
                                std::uint64_t seed);

/// (|0..0> + |1..1>)/sqrt(2) on the first `split` parties tensored with the
/// same form on the rest; a single party gets |+>.
StateVector optimal_ghz_like_input(int n, int split);

}  // namespace gmepower
