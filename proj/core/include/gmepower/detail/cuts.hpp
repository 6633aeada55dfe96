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
#include <span>
#include <vector>

#include "gmepower/quantum_core.hpp"

namespace gmepower::detail {

// Reshape of an n-qubit amplitude vector into a matrix M(row, col) where the
// row index collects the bits of `mask` parties (in ascending party order,
// lowest party most significant) and the column index the remaining parties.
// `rows <= cols` always holds: the table is built for whichever side of the
// cut is smaller.
struct CutIndex {
  int n = 0;
  unsigned mask = 0;
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> row_of;
  std::vector<std::uint8_t> col_of;
};

// Cached, immutable after first use; safe to call concurrently.
const CutIndex& cut_index(int n, unsigned mask);

// Cached list of cut indices matching enumerate_bipartitions(n), same order.
std::span<const CutIndex* const> canonical_cuts(int n);

// Largest eigenvalue of the reduced density matrix on either side of the cut,
// i.e. the largest squared Schmidt coefficient. Allocation-free for n <= 6.
double max_schmidt_weight(std::span<const Complex> amplitudes, const CutIndex& cut);

// Largest eigenvalue of a 2x2 Hermitian matrix [[a, c], [conj(c), b]].
inline double max_eig_2x2(double a, double b, Complex c) {
  const double half_diff = 0.5 * (a - b);
  return 0.5 * (a + b) + std::sqrt(half_diff * half_diff + std::norm(c));
}

}  // namespace gmepower::detail
