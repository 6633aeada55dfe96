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


#include "gmepower/power.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "gmepower/gates.hpp"
#include "gmepower/ggm.hpp"

using namespace gmepower;
using std::numbers::pi;

namespace {

OptimizerConfig quick(int restarts = 6) {
  OptimizerConfig c;
  c.restarts = restarts;
  c.max_iters = 400;
  return c;
}

}  // namespace

TEST(optimizer_config, validation) {
  OptimizerConfig c;
  EXPECT_NO_THROW(validate(c));
  c.restarts = 0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.step_tol = 0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.ent_floor = -1;
  EXPECT_THROW(validate(c), std::invalid_argument);
  EXPECT_TRUE(default_freeze_phases(GateFamily::kDiagonalOnePhase));
  EXPECT_FALSE(default_freeze_phases(GateFamily::kDiagonalGeneral));
  EXPECT_FALSE(default_freeze_phases(GateFamily::kHaar));
}

TEST(max_power, identity_cannot_entangle) {
  for (int k = 2; k <= 3; ++k) {
    const auto r = max_power(identity_gate(3), k, quick(2));
    EXPECT_NEAR(r.g_max, 0.0, 1e-12);
  }
  EXPECT_THROW(max_power(identity_gate(3), 1, quick()), std::invalid_argument);
  EXPECT_THROW(max_power(identity_gate(3), 4, quick()), std::invalid_argument);
}

// Closed form for the one-phase gate from biseparable inputs: sin^2(phi/4).
TEST(max_power, one_phase_biseparable_closed_form) {
  auto cfg = quick();
  cfg.freeze_phases = true;
  for (double phi : {pi / 4, pi / 2, pi}) {
    const auto r = max_power(diag_one_phase(phi, 3), 2, cfg);
    EXPECT_NEAR(r.g_max, std::pow(std::sin(phi / 4), 2), 2e-3) << phi;
    EXPECT_LE(r.g_max, std::pow(std::sin(phi / 4), 2) + 1e-9);
  }
}

TEST(max_power, reported_optimum_is_consistent) {
  const auto u = usp3(pi / 4, 0.1, 0.1);
  const auto r = max_power(u, 3, quick());
  EXPECT_NEAR(ggm(r.best_output).value, r.g_max, 1e-12);
  EXPECT_LT((apply_unitary(u, r.best_input).amplitudes() - r.best_output.amplitudes()).norm(), 1e-12);
  EXPECT_NEAR(std::abs(realize(r.best_params).amplitudes().dot(r.best_input.amplitudes())), 1.0, 1e-9);
  EXPECT_EQ(r.layout_chosen.k(), 3);
  EXPECT_EQ(r.starts_total, 6);
  EXPECT_GE(r.starts_converged, 1);
}

TEST(max_power, reaches_ghz_from_product) {
  const auto r = max_power(usp3(-pi / 4, 0, 0), 3, quick());
  EXPECT_NEAR(r.g_max, 0.5, 1e-6);
}

TEST(max_power, bounded_by_class_and_grid_oracle) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto u = haar_random(3, seed);
    auto cfg = quick(8);
    cfg.freeze_phases = true;
    const auto r3 = max_power(u, 3, cfg);
    EXPECT_GE(r3.g_max, grid_oracle(u, 3, 9, cfg.ent_floor, true) - 1e-9);
    EXPECT_LE(r3.g_max, 0.5 + 1e-12);
  }
}

// With no floor every (k+1)-separable state is also k-separable.
TEST(max_power, monotone_in_class_without_floor) {
  auto cfg = quick(8);
  cfg.ent_floor = 0.0;
  for (std::uint64_t seed : {4, 5}) {
    const auto u = haar_random(3, seed);
    EXPECT_GE(max_power(u, 2, cfg).g_max, max_power(u, 3, cfg).g_max - 1e-6);
  }
}

TEST(max_power, deterministic_across_thread_counts) {
  const auto u = haar_random(3, 11);
  auto cfg = quick(8);
  const auto a = max_power(u, 2, cfg);
  cfg.threads = 3;
  const auto b = max_power(u, 2, cfg);
  EXPECT_EQ(a.g_max, b.g_max);
  EXPECT_EQ(a.best_params.angles, b.best_params.angles);
  EXPECT_EQ(a.layout_chosen, b.layout_chosen);
}

TEST(max_power, layout_restriction) {
  auto cfg = quick(4);
  cfg.layouts = {parse_layout("1|02", 3)};
  const auto r = max_power(haar_random(3, 2), 2, cfg);
  EXPECT_EQ(r.layout_chosen, parse_layout("1|02", 3));
  // A restriction for another class leaves k = 3 alone.
  EXPECT_EQ(max_power(haar_random(3, 2), 3, cfg).layout_chosen.k(), 3);
  const auto direct = max_power(haar_random(3, 2), parse_layout("1|02", 3), quick(4));
  EXPECT_EQ(direct.g_max, r.g_max);
}

TEST(max_power_curve, value_major_order) {
  GateSpec g{GateFamily::kDiagonalOnePhase, 3, {0.0}, std::nullopt};
  const std::vector<double> values{0.0, pi};
  const std::vector<int> ks{2, 3};
  auto cfg = quick(3);
  cfg.freeze_phases = true;
  const auto pts = max_power_curve(g, 0, values, ks, cfg, 2);
  ASSERT_EQ(pts.size(), 4U);
  EXPECT_EQ(pts[1].param, 0.0);
  EXPECT_EQ(pts[1].k, 3);
  EXPECT_NEAR(pts[0].g_max, 0.0, 1e-12);
  EXPECT_NEAR(pts[2].g_max, 0.5, 2e-3);
}

TEST(max_power_slices, grid_order) {
  const std::vector<double> a{0.0, pi / 4}, b{0.0};
  const auto rows = max_power_slices(GateFamily::kUsp3, a, b, b, 3, quick(3), 1);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_NEAR(rows[0].g_max, 0.0, 1e-12);
  EXPECT_NEAR(rows[1].g_max, 0.5, 1e-6);
  EXPECT_THROW(max_power_slices(GateFamily::kUsp2, a, b, b, 3, quick(), 1), std::invalid_argument);
}

TEST(average_power, bounds_and_determinism) {
  const auto u = diag_one_phase(pi, 3);
  const auto a = average_power(u, 3, 2000, 1e-2, 7, 1);
  const auto b = average_power(u, 3, 2000, 1e-2, 7, 2);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_GT(a.mean, 0.0);
  EXPECT_LT(a.mean, 0.5);
  EXPECT_GT(a.std_error, 0.0);
  EXPECT_NEAR(average_power(identity_gate(3), 2, 500, 1e-2, 1, 1).mean, 0.0, 1e-12);
}

TEST(histogram, frequencies_and_clamping) {
  const std::vector<double> v{0.0, 0.01, 0.25, 0.5, 0.7, -0.1};
  const auto h = histogram(v, 5, 0.0, 0.5);
  ASSERT_EQ(h.size(), 5U);
  double total = 0;
  for (const auto& bin : h) total += bin.frequency;
  EXPECT_NEAR(total, 1.0, 1e-15);
  EXPECT_NEAR(h[0].center, 0.05, 1e-15);
  EXPECT_NEAR(h[0].frequency, 3.0 / 6, 1e-15);
  EXPECT_NEAR(h[4].frequency, 2.0 / 6, 1e-15);
  EXPECT_THROW(histogram(v, 0), std::invalid_argument);
}

TEST(ensemble_study, deterministic_and_complete) {
  const std::vector<int> ks{2, 3};
  auto cfg = quick(2);
  cfg.max_iters = 150;
  const auto a = ensemble_study(GateFamily::kDiagonalGeneral, 3, 3, ks, cfg, 10, 1);
  const auto b = ensemble_study(GateFamily::kDiagonalGeneral, 3, 3, ks, cfg, 10, 2);
  ASSERT_EQ(a.records.size(), 6U);
  ASSERT_EQ(a.stats.size(), 2U);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].g_max, b.records[i].g_max);
    EXPECT_EQ(a.records[i].gate, b.records[i].gate);
  }
  EXPECT_EQ(a.records[0].gate.params.size(), 8U);
  for (double p : a.records[0].gate.params) {
    EXPECT_GE(p, 0.0);
    EXPECT_LT(p, 2 * pi);
  }
  EXPECT_EQ(a.stats[0].histogram.size(), 10U);
  EXPECT_EQ(a.skipped, 0);
}

TEST(grid_oracle, guards_size) {
  EXPECT_THROW(grid_oracle(haar_random(3, 1), 2, 200, 1e-2, false), std::invalid_argument);
  EXPECT_NEAR(grid_oracle(identity_gate(3), 3, 5, 1e-2), 0.0, 1e-12);
}
