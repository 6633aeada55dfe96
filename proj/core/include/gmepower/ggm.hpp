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

#include <span>
#include <string>
#include <vector>

#include "gmepower/quantum_core.hpp"

namespace gmepower {

inline constexpr double kDefaultSeparabilityTol = 1e-7;

/// Generalized geometric measure of a pure state together with the cut that
/// attains the largest Schmidt weight.
struct GgmValue {
  double value = 0.0;
  Bipartition argmax_cut;
};

/// G(psi) = 1 - max over bipartitions of the largest squared Schmidt
/// coefficient. Ties between cuts go to the first cut in
/// enumerate_bipartitions() order. Requires at least two parties.
GgmValue ggm(const StateVector& psi);

/// Allocation-free value-only variant for hot loops. `amplitudes` must hold
/// 2^n normalized entries; nothing is validated.
double ggm_value(std::span<const Complex> amplitudes, int n);

/// 1 - lambda_max across the cut; zero iff the state is a product across it.
double block_entanglement(const StateVector& psi, const Bipartition& cut);

/// Factorization structure of a pure state: disjoint blocks of parties, each
/// sorted, ordered by their smallest party.
struct Partition {
  std::vector<std::vector<int>> blocks;

  int k() const { return static_cast<int>(blocks.size()); }
  /// "0|12"
  std::string label() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Finest partition such that every cut separating its blocks has
/// lambda_max >= 1 - tol. k() is the separability class of the state.
Partition separability_signature(const StateVector& psi, double tol = kDefaultSeparabilityTol);

}  // namespace gmepower
