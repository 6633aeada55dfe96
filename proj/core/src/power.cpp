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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "gmepower/gates.hpp"
#include "gmepower/ggm.hpp"
#include "gmepower/nelder_mead.hpp"
#include "gmepower/parallel.hpp"
#include "gmepower/seeding.hpp"

namespace gmepower {

namespace {

constexpr std::size_t kMaxDim = std::size_t{1} << kMaxParties;
constexpr double kPenaltyWeight = 1.0;
constexpr double kGridGuard = 1e8;
constexpr int kFrozenStartAttempts = 1000;

void check_k(const UnitaryMatrix& u, int k) {
  if (k < 2 || k > u.num_parties()) {
    throw std::invalid_argument("k = " + std::to_string(k) + " outside 2.." + std::to_string(u.num_parties()));
  }
}

// Objective state for one (U, layout) pair. Not thread-safe; one per task.
class Evaluator {
 public:
  Evaluator(const UnitaryMatrix& u, const Layout& layout, double floor, bool frozen)
      : u_(u.entries()), layout_(layout), floor_(floor), frozen_(frozen),
        angles_(static_cast<std::size_t>(layout.angle_count())), dim_(u.dim()) {}

  std::size_t dims() const { return frozen_ ? angles_ : 2 * angles_; }

  std::span<const double> angles(const std::vector<double>& x) const { return {x.data(), angles_}; }
  std::span<const double> phases(const std::vector<double>& x) const {
    return frozen_ ? std::span<const double>() : std::span<const double>(x.data() + angles_, angles_);
  }

  double entanglement(const std::vector<double>& x) const {
    return min_block_entanglement(layout_, angles(x), phases(x));
  }

  double ggm_at(const std::vector<double>& x) {
    realize_into(layout_, angles(x), phases(x), std::span<Complex>(in_.data(), dim_));
    Eigen::Map<const CVector> in(in_.data(), static_cast<Eigen::Index>(dim_));
    Eigen::Map<CVector> out(out_.data(), static_cast<Eigen::Index>(dim_));
    out.noalias() = u_ * in;
    return ggm_value(std::span<const Complex>(out_.data(), dim_), layout_.n);
  }

  // Minimized by Nelder-Mead: -G plus a log barrier below the floor. Records
  // the best feasible point seen.
  double operator()(const std::vector<double>& x) {
    const double g = ggm_at(x);
    double penalty = 0.0;
    bool feasible = true;
    if (floor_ > 0.0 && layout_.k() < layout_.n) {
      const double e = entanglement(x);
      if (e < floor_) {
        feasible = false;
        penalty = -kPenaltyWeight * std::log(std::max(e, 1e-300) / floor_);
      }
    }
    if (feasible && g > best_g_) {
      best_g_ = g;
      best_x_ = x;
    }
    return -g + penalty;
  }

  double best_g() const { return best_g_; }
  const std::vector<double>& best_x() const { return best_x_; }

 private:
  const CMatrix& u_;
  const Layout& layout_;
  double floor_;
  bool frozen_;
  std::size_t angles_;
  std::size_t dim_;
  std::array<Complex, kMaxDim> in_{};
  std::array<Complex, kMaxDim> out_{};
  double best_g_ = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
};

struct StartOutcome {
  double g = -std::numeric_limits<double>::infinity();
  std::vector<double> x;
  bool converged = false;
};

std::vector<double> start_point(const Evaluator& ev, const Layout& layout, const OptimizerConfig& cfg,
                                std::uint64_t seed) {
  for (int attempt = 0; attempt < kFrozenStartAttempts; ++attempt) {
    const auto p = sample_uniform(layout.n, layout.k(), layout, cfg.ent_floor,
                                  derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
    std::vector<double> x = p.angles;
    if (!cfg.freeze_phases) {
      x.insert(x.end(), p.phases.begin(), p.phases.end());
      return x;
    }
    // Dropping the phases can push a block below the floor; redraw if so.
    if (layout.k() == layout.n || ev.entanglement(x) >= cfg.ent_floor) return x;
  }
  throw RejectionBudgetExhausted("no real-amplitude start above ent_floor for layout " + layout.label());
}

StartOutcome run_start(const UnitaryMatrix& u, const Layout& layout, const OptimizerConfig& cfg,
                       std::uint64_t seed) {
  Evaluator ev(u, layout, cfg.ent_floor, cfg.freeze_phases);
  NelderMeadOptions opt{cfg.max_iters, cfg.step_tol, cfg.value_tol, 0.3};
  const auto res = nelder_mead(ev, start_point(ev, layout, cfg, seed), opt);
  return {ev.best_g(), ev.best_x(), res.converged};
}

// Re-runs the simplex from the incumbent with shrinking initial steps.
StartOutcome polish(const UnitaryMatrix& u, const Layout& layout, const OptimizerConfig& cfg, StartOutcome s) {
  for (double step : {0.05, 0.01}) {
    Evaluator ev(u, layout, cfg.ent_floor, cfg.freeze_phases);
    NelderMeadOptions opt{cfg.max_iters, cfg.step_tol, cfg.value_tol, step};
    const auto res = nelder_mead(ev, s.x, opt);
    if (ev.best_g() > s.g) {
      s.g = ev.best_g();
      s.x = ev.best_x();
    }
    s.converged = s.converged || res.converged;
  }
  return s;
}

OptimizationResult search(const UnitaryMatrix& u, std::span<const Layout> layouts, const OptimizerConfig& cfg) {
  validate(cfg);
  const std::size_t restarts = static_cast<std::size_t>(cfg.restarts);
  std::vector<StartOutcome> outcomes(layouts.size() * restarts);
  parallel_for(outcomes.size(), cfg.threads, [&](std::size_t t) {
    const std::size_t l = t / restarts;
    outcomes[t] = run_start(u, layouts[l], cfg, derive_seed(cfg.seed, {l, t % restarts}));
  });

  OptimizationResult result;
  result.starts_total = static_cast<int>(outcomes.size());
  std::size_t best = outcomes.size();
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    if (outcomes[t].converged) ++result.starts_converged;
    if (!outcomes[t].x.empty() && (best == outcomes.size() || outcomes[t].g > outcomes[best].g)) best = t;
  }
  if (best == outcomes.size()) {
    throw std::runtime_error("no start reached a point above ent_floor");
  }
  const Layout& layout = layouts[best / restarts];
  const StartOutcome top = polish(u, layout, cfg, outcomes[best]);

  Evaluator ev(u, layout, cfg.ent_floor, cfg.freeze_phases);
  std::vector<double> phases(ev.phases(top.x).begin(), ev.phases(top.x).end());
  if (cfg.freeze_phases) phases.assign(static_cast<std::size_t>(layout.angle_count()), 0.0);
  KSeparableParams raw{layout, std::vector<double>(top.x.begin(), top.x.begin() + layout.angle_count()), phases,
                       cfg.ent_floor};

  result.best_input = realize(raw);
  result.best_params = params_from_state(layout, result.best_input, cfg.ent_floor);
  result.best_output = apply_unitary(u, result.best_input);
  result.g_max = ggm(result.best_output).value;
  result.layout_chosen = layout;
  result.boundary_flag = cfg.ent_floor > 0.0 && layout.k() < layout.n && ev.entanglement(top.x) < 2.0 * cfg.ent_floor;
  result.converged = result.starts_converged > 0 || top.converged;
  return result;
}

}  // namespace

void validate(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(cfg.step_tol > 0.0) || !(cfg.value_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (!(cfg.ent_floor >= 0.0) || cfg.ent_floor >= 0.5) throw std::invalid_argument("ent_floor must lie in [0, 0.5)");
}

bool default_freeze_phases(GateFamily family) { return family == GateFamily::kDiagonalOnePhase; }

OptimizationResult max_power(const UnitaryMatrix& u, int k, const OptimizerConfig& cfg) {
  check_k(u, k);
  std::vector<Layout> layouts;
  for (const auto& l : cfg.layouts) {
    if (l.n != u.num_parties()) throw std::invalid_argument("layout " + l.label() + " does not match the gate");
    if (l.k() == k) layouts.push_back(l);
  }
  if (layouts.empty()) layouts = enumerate_layouts(u.num_parties(), k);
  return search(u, layouts, cfg);
}

OptimizationResult max_power(const UnitaryMatrix& u, const Layout& layout, const OptimizerConfig& cfg) {
  if (layout.n != u.num_parties()) throw std::invalid_argument("layout does not match the gate's party count");
  check_k(u, layout.k());
  return search(u, std::span<const Layout>(&layout, 1), cfg);
}

std::vector<CurvePoint> max_power_curve(const GateSpec& gate, int param_index, std::span<const double> values,
                                        std::span<const int> ks, const OptimizerConfig& cfg, int threads) {
  if (param_index < 0 || param_index >= static_cast<int>(gate.params.size())) {
    throw std::invalid_argument("sweep parameter index " + std::to_string(param_index) + " out of range for " +
                                std::string(to_string(gate.family)));
  }
  std::vector<CurvePoint> points(values.size() * ks.size());
  OptimizerConfig inner = cfg;
  inner.threads = 1;
  parallel_for(points.size(), threads, [&](std::size_t t) {
    GateSpec spec = gate;
    spec.params[static_cast<std::size_t>(param_index)] = values[t / ks.size()];
    const int k = ks[t % ks.size()];
    const auto r = max_power(build_gate(spec), k, inner);
    points[t] = {values[t / ks.size()], k, r.g_max, r.boundary_flag};
  });
  return points;
}

std::vector<SliceRow> max_power_slices(GateFamily family, std::span<const double> jx, std::span<const double> jy,
                                       std::span<const double> jz, int k, const OptimizerConfig& cfg, int threads) {
  if (family != GateFamily::kUsp1 && family != GateFamily::kUsp3) {
    throw std::invalid_argument("slices take usp1 or usp3");
  }
  std::vector<SliceRow> rows(jx.size() * jy.size() * jz.size());
  OptimizerConfig inner = cfg;
  inner.threads = 1;
  parallel_for(rows.size(), threads, [&](std::size_t t) {
    const double x = jx[t / (jy.size() * jz.size())];
    const double y = jy[(t / jz.size()) % jy.size()];
    const double z = jz[t % jz.size()];
    const auto u = family == GateFamily::kUsp1 ? usp1(x, y, z) : usp3(x, y, z);
    const auto r = max_power(u, k, inner);
    rows[t] = {x, y, z, r.g_max, r.boundary_flag};
  });
  return rows;
}

AverageResult average_power(const UnitaryMatrix& u, int k, int num_samples, double ent_floor,
                            std::uint64_t seed, int threads) {
  check_k(u, k);
  if (num_samples < 1) throw std::invalid_argument("num_samples must be at least 1");
  const int n = u.num_parties();
  std::vector<double> values(static_cast<std::size_t>(num_samples));
  parallel_for(values.size(), threads, [&](std::size_t i) {
    const auto p = sample_uniform(n, k, std::nullopt, ent_floor, derive_seed(seed, {i}));
    std::array<Complex, kMaxDim> in{}, out{};
    const auto dim = static_cast<Eigen::Index>(u.dim());
    realize_into(p.layout, p.angles, p.phases, std::span<Complex>(in.data(), u.dim()));
    Eigen::Map<CVector>(out.data(), dim).noalias() = u.entries() * Eigen::Map<const CVector>(in.data(), dim);
    values[i] = ggm_value(std::span<const Complex>(out.data(), u.dim()), n);
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / num_samples;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = num_samples > 1 ? ss / (num_samples - 1) : 0.0;
  return {mean, std::sqrt(var / num_samples), num_samples};
}

std::vector<HistogramBin> histogram(std::span<const double> values, int bins, double lo, double hi) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("histogram needs bins >= 1 and hi > lo");
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  const double width = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b) out[static_cast<std::size_t>(b)].center = lo + (b + 0.5) * width;
  if (values.empty()) return out;
  std::vector<std::size_t> counts(out.size(), 0);
  for (double v : values) {
    const auto b = static_cast<long>(std::floor((v - lo) / width));
    ++counts[static_cast<std::size_t>(std::clamp<long>(b, 0, bins - 1))];
  }
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b].frequency = static_cast<double>(counts[b]) / static_cast<double>(values.size());
  }
  return out;
}

EnsembleReport ensemble_study(GateFamily family, int n, int num_ops, std::span<const int> ks,
                              const OptimizerConfig& cfg, int bins, int threads) {
  if (family != GateFamily::kDiagonalGeneral && family != GateFamily::kHaar) {
    throw std::invalid_argument("ensembles are drawn from diag-general or haar");
  }
  if (num_ops < 1) throw std::invalid_argument("num_ops must be at least 1");
  validate(cfg);
  for (int k : ks) {
    if (k < 2 || k > n) throw std::invalid_argument("k = " + std::to_string(k) + " outside 2.." + std::to_string(n));
  }

  struct Slot {
    bool ok = false;
    std::vector<EnsembleRecord> records;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(num_ops));
  OptimizerConfig inner = cfg;
  inner.threads = 1;
  parallel_for(slots.size(), threads, [&](std::size_t op) {
    const std::uint64_t op_seed = derive_seed(cfg.seed, {0x0b5, op});
    GateSpec spec{family, n, {}, std::nullopt};
    if (family == GateFamily::kHaar) {
      spec.seed = op_seed;
    } else {
      Rng rng = make_rng(op_seed);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      spec.params.resize(std::size_t{1} << n);
      for (double& p : spec.params) p = phase(rng);
    }
    try {
      const auto u = build_gate(spec);
      std::vector<EnsembleRecord> recs;
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        OptimizerConfig c = inner;
        c.seed = derive_seed(cfg.seed, {op, static_cast<std::uint64_t>(ks[ki])});
        const auto r = max_power(u, ks[ki], c);
        recs.push_back({static_cast<int>(op), ks[ki], op_seed, spec, r.g_max, r.boundary_flag});
      }
      slots[op] = {true, std::move(recs)};
    } catch (const std::exception&) {
      slots[op].ok = false;
    }
  });

  EnsembleReport report;
  std::vector<std::vector<double>> per_k(ks.size());
  for (auto& slot : slots) {
    if (!slot.ok) {
      ++report.skipped;
      continue;
    }
    for (std::size_t ki = 0; ki < ks.size(); ++ki) per_k[ki].push_back(slot.records[ki].g_max);
    for (auto& r : slot.records) report.records.push_back(std::move(r));
  }
  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    const auto& v = per_k[ki];
    EnsembleStats s;
    s.family = family;
    s.k = ks[ki];
    s.num_ops = static_cast<int>(v.size());
    if (!v.empty()) {
      double sum = 0.0;
      for (double x : v) sum += x;
      s.mean = sum / static_cast<double>(v.size());
      double ss = 0.0;
      for (double x : v) ss += (x - s.mean) * (x - s.mean);
      s.std_dev = std::sqrt(ss / static_cast<double>(v.size()));
    }
    s.histogram = histogram(v, bins);
    report.stats.push_back(std::move(s));
  }
  return report;
}

double grid_oracle(const UnitaryMatrix& u, int k, int resolution, double ent_floor, bool freeze_phases) {
  check_k(u, k);
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  const auto layouts = enumerate_layouts(u.num_parties(), k);

  double total = 0.0;
  for (const auto& layout : layouts) {
    const int axes = layout.angle_count() * (freeze_phases ? 1 : 2);
    total += std::pow(static_cast<double>(resolution), axes);
  }
  if (total > kGridGuard) {
    throw std::invalid_argument("grid of " + std::to_string(total) + " points exceeds the 1e8 guard");
  }

  double best = 0.0;
  for (const auto& layout : layouts) {
    Evaluator ev(u, layout, ent_floor, freeze_phases);
    const std::size_t na = static_cast<std::size_t>(layout.angle_count());
    const std::size_t axes = ev.dims();
    std::vector<int> idx(axes, 0);
    std::vector<double> x(axes, 0.0);
    const double angle_step = (std::numbers::pi / 2) / (resolution - 1);
    const double phase_step = 2.0 * std::numbers::pi / resolution;
    while (true) {
      for (std::size_t a = 0; a < axes; ++a) x[a] = idx[a] * (a < na ? angle_step : phase_step);
      if (layout.k() == layout.n || ev.entanglement(x) >= ent_floor) best = std::max(best, ev.ggm_at(x));
      std::size_t a = 0;
      while (a < axes && ++idx[a] == resolution) idx[a++] = 0;
      if (a == axes) break;
    }
  }
  return best;
}

}  // namespace gmepower
