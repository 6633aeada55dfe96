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

#include "gmepower/ggm.hpp"

#include <algorithm>
#include <stdexcept>

#include "gmepower/detail/cuts.hpp"

namespace gmepower {

namespace {

// Differences below this are treated as ties so argmax_cut stays stable
// under eigensolver rounding.
constexpr double kTieTolerance = 1e-12;

std::span<const Complex> view(const StateVector& psi) {
  return {psi.amplitudes().data(), psi.dim()};
}

}  // namespace

GgmValue ggm(const StateVector& psi) {
  const int n = psi.num_parties();
  if (n < 2) {
    throw std::invalid_argument("GGM needs at least two parties");
  }
  const auto cuts = detail::canonical_cuts(n);
  const auto amps = view(psi);
  double best = -1.0;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double w = detail::max_schmidt_weight(amps, *cuts[i]);
    if (w > best + kTieTolerance) {
      best = w;
      best_index = i;
    }
  }
  auto all = enumerate_bipartitions(n);
  return GgmValue{std::clamp(1.0 - best, 0.0, 1.0), std::move(all[best_index])};
}

double ggm_value(std::span<const Complex> amplitudes, int n) {
  double best = 0.0;
  for (const auto* cut : detail::canonical_cuts(n)) {
    best = std::max(best, detail::max_schmidt_weight(amplitudes, *cut));
  }
  return std::max(0.0, 1.0 - best);
}

double block_entanglement(const StateVector& psi, const Bipartition& cut) {
  if (cut.num_parties() != psi.num_parties()) {
    throw std::invalid_argument("cut " + cut.label() + " does not match a " +
                                std::to_string(psi.num_parties()) + "-party state");
  }
  const auto& ci = detail::cut_index(psi.num_parties(), cut.mask());
  return std::max(0.0, 1.0 - detail::max_schmidt_weight(view(psi), ci));
}

std::string Partition::label() const {
  std::string s;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) s += '|';
    for (int p : blocks[b]) s += std::to_string(p);
  }
  return s;
}

Partition separability_signature(const StateVector& psi, double tol) {
  const int n = psi.num_parties();
  const unsigned full = (1u << n) - 1u;
  const auto amps = view(psi);

  // A subset is a factor when the state is a product across it. For pure
  // states these subsets are closed under complement and intersection, so
  // the blocks are the atoms generated by them.
  std::vector<unsigned> factors;
  for (unsigned mask = 1; mask < full; ++mask) {
    if (detail::max_schmidt_weight(amps, detail::cut_index(n, mask)) >= 1.0 - tol) {
      factors.push_back(mask);
    }
  }

  Partition out;
  unsigned assigned = 0;
  for (int p = 0; p < n; ++p) {
    if (assigned & (1u << p)) continue;
    unsigned block = full;
    for (unsigned f : factors) block &= (f & (1u << p)) ? f : (full & ~f);
    block &= ~assigned;
    std::vector<int> parties;
    for (int q = 0; q < n; ++q) {
      if (block & (1u << q)) parties.push_back(q);
    }
    assigned |= block;
    out.blocks.push_back(std::move(parties));
  }
  return out;
}

}  // namespace gmepower
