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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "gmepower/gates.hpp"
#include "gmepower/separable.hpp"
#include "oracles.hpp"

using namespace gmepower;

namespace {

StateVector ghz(int n) {
  CVector v = CVector::Zero(1 << n);
  v[0] = v[(1 << n) - 1] = 1.0;
  return StateVector::normalized(v);
}

StateVector w_state(int n) {
  CVector v = CVector::Zero(1 << n);
  for (int p = 0; p < n; ++p) v[1 << p] = 1.0;
  return StateVector::normalized(v);
}

}  // namespace

TEST(ggm, known_states) {
  EXPECT_NEAR(ggm(ghz(3)).value, 0.5, 1e-14);
  EXPECT_NEAR(ggm(ghz(5)).value, 0.5, 1e-14);
  EXPECT_NEAR(ggm(w_state(3)).value, 1.0 / 3, 1e-14);
  EXPECT_NEAR(ggm(w_state(4)).value, 0.25, 1e-14);
  EXPECT_NEAR(ggm(StateVector::from_bits("0110")).value, 0.0, 1e-15);
  EXPECT_THROW(ggm(StateVector::from_bits("0")), std::invalid_argument);
}

TEST(ggm, argmax_cut_breaks_ties_by_order) {
  // Every cut of GHZ has lambda_max = 1/2, so the first cut wins.
  EXPECT_EQ(ggm(ghz(4)).argmax_cut.label(), "{0}");
  // |0> (x) Bell: the cut {0} is a product.
  const auto s = tensor_product(StateVector::from_bits("0"), ghz(2));
  EXPECT_EQ(ggm(s).argmax_cut.label(), "{0}");
  EXPECT_NEAR(ggm(s).value, 0.0, 1e-15);
}

TEST(ggm, matches_all_subset_oracle) {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 6; ++n) {
    for (int t = 0; t < 40; ++t) {
      const CVector v = oracle::random_state(n, rng);
      const double expected = oracle::ggm(v, n);
      EXPECT_NEAR(ggm(StateVector(v)).value, expected, 1e-12);
      EXPECT_NEAR(ggm_value(std::span<const Complex>(v.data(), static_cast<std::size_t>(v.size())), n), expected,
                  1e-12);
    }
  }
}

TEST(ggm, range_is_bounded) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + t % 5;
    const double g = ggm(StateVector(oracle::random_state(n, rng))).value;
    EXPECT_GE(g, -1e-14);
    EXPECT_LE(g, 1.0 - 1.0 / (1 << (n / 2)) + 1e-12);
  }
}

TEST(ggm, invariant_under_local_unitaries) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + t % 3;
    const StateVector psi(oracle::random_state(n, rng));
    const auto lu = random_local_product(n, static_cast<std::uint64_t>(t));
    EXPECT_NEAR(ggm(apply_unitary(lu, psi)).value, ggm(psi).value, 1e-10);
  }
}

TEST(block_entanglement, product_and_bell) {
  const auto s = tensor_product(StateVector::from_bits("1"), ghz(2));
  EXPECT_NEAR(block_entanglement(s, Bipartition({0}, 3)), 0.0, 1e-15);
  EXPECT_NEAR(block_entanglement(s, Bipartition({1}, 3)), 0.5, 1e-15);
}

TEST(separability_signature, detects_layout) {
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 5; ++n) {
    for (int k = 2; k <= n; ++k) {
      for (const auto& layout : enumerate_layouts(n, k)) {
        const auto p = sample_uniform(n, k, layout, 0.05, rng());
        const auto sig = separability_signature(realize(p));
        EXPECT_EQ(sig.blocks, layout.blocks) << layout.label();
        EXPECT_EQ(sig.k(), k);
      }
    }
  }
  EXPECT_EQ(separability_signature(ghz(3)).label(), "012");
  EXPECT_EQ(separability_signature(StateVector::from_bits("010")).label(), "0|1|2");
}
