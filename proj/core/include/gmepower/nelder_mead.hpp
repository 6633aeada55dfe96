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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace gmepower {

struct NelderMeadOptions {
  int max_iters = 500;
  /// Converged once every vertex lies within step_tol (max-norm) of the best
  /// vertex and the objective spread is below value_tol.
  double step_tol = 1e-6;
  double value_tol = 1e-8;
  /// Edge length of the initial axis-aligned simplex.
  double initial_step = 0.3;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes f over R^d with the dimension-adaptive Nelder-Mead coefficients
/// of Gao and Han (2012): reflection 1, expansion 1 + 2/d, contraction
/// 0.75 - 1/(2d), shrink 1 - 1/d. `f` takes const std::vector<double>&.
template <class F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, const NelderMeadOptions& opt) {
  const std::size_t d = x0.size();
  if (d == 0) return {x0, f(x0), 0, true};

  const double dd = static_cast<double>(d);
  double expand = 2.0, contract = 0.5, shrink = 0.5;
  if (d >= 2) {
    expand = 1.0 + 2.0 / dd;
    contract = 0.75 - 0.5 / dd;
    shrink = 1.0 - 1.0 / dd;
  }

  std::vector<std::vector<double>> pts(d + 1, x0);
  for (std::size_t i = 0; i < d; ++i) pts[i + 1][i] += opt.initial_step;
  std::vector<double> vals(d + 1);
  for (std::size_t i = 0; i <= d; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), trial(d), trial2(d);
  auto along = [&](double t, std::vector<double>& out) {
    const auto& worst = pts[order[d]];
    for (std::size_t j = 0; j < d; ++j) out[j] = centroid[j] + t * (worst[j] - centroid[j]);
  };

  NelderMeadResult res;
  int iter = 0;
  for (;; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

    const auto& best = pts[order[0]];
    double spread = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      for (std::size_t j = 0; j < d; ++j) spread = std::max(spread, std::abs(pts[order[i]][j] - best[j]));
    }
    if (spread <= opt.step_tol && std::abs(vals[order[d]] - vals[order[0]]) <= opt.value_tol) {
      res.converged = true;
      break;
    }
    if (iter >= opt.max_iters) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) centroid[j] += pts[order[i]][j];
    }
    for (double& c : centroid) c /= dd;

    const std::size_t w = order[d];
    along(-1.0, trial);
    const double fr = f(trial);
    if (fr < vals[order[0]]) {
      along(-expand, trial2);
      const double fe = f(trial2);
      if (fe < fr) {
        pts[w] = trial2;
        vals[w] = fe;
      } else {
        pts[w] = trial;
        vals[w] = fr;
      }
      continue;
    }
    if (fr < vals[order[d - 1]]) {
      pts[w] = trial;
      vals[w] = fr;
      continue;
    }
    if (fr < vals[w]) {
      along(-contract, trial2);
      const double fc = f(trial2);
      if (fc <= fr) {
        pts[w] = trial2;
        vals[w] = fc;
        continue;
      }
    } else {
      along(contract, trial2);
      const double fc = f(trial2);
      if (fc < vals[w]) {
        pts[w] = trial2;
        vals[w] = fc;
        continue;
      }
    }
    const std::vector<double> anchor = pts[order[0]];
    for (std::size_t i = 1; i <= d; ++i) {
      auto& p = pts[order[i]];
      for (std::size_t j = 0; j < d; ++j) p[j] = anchor[j] + shrink * (p[j] - anchor[j]);
      vals[order[i]] = f(p);
    }
  }
  res.x = pts[order[0]];
  res.value = vals[order[0]];
  res.iterations = iter;
  return res;
}

}  // namespace gmepower
