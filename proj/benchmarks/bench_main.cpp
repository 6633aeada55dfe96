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


#include <random>

#include <benchmark/benchmark.h>

#include "gmepower/gates.hpp"
#include "gmepower/ggm.hpp"
#include "gmepower/power.hpp"
#include "gmepower/separable.hpp"

namespace {

using namespace gmepower;

void BM_ggm_value(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  CVector v(1 << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(g(rng), g(rng));
  v.normalize();
  const std::span<const Complex> amps(v.data(), static_cast<std::size_t>(v.size()));
  for (auto _ : state) benchmark::DoNotOptimize(ggm_value(amps, n));
}
BENCHMARK(BM_ggm_value)->DenseRange(3, 6);

void BM_realize(benchmark::State& state) {
  const auto p = sample_uniform(3, 2, std::nullopt, 1e-2, 3);
  std::vector<Complex> out(8);
  for (auto _ : state) {
    realize_into(p.layout, p.angles, p.phases, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_realize);

void BM_max_power(benchmark::State& state) {
  const auto u = haar_random(3, 5);
  OptimizerConfig cfg;
  cfg.restarts = 10;
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(max_power(u, k, cfg).g_max);
}
BENCHMARK(BM_max_power)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
