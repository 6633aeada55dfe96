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


#include "gmepower/experiments/run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gmepower/gates.hpp"
#include "gmepower/ggm.hpp"
#include "gmepower/power.hpp"
#include "gmepower/seeding.hpp"
#include "gmepower/tables.hpp"
#include "gmepower/version.hpp"

namespace gmepower::experiments {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  Table csv;
  std::optional<Table> hist;
  Json results = Json::object();
  std::string summary;
  std::string gnuplot;
  bool verification_failed = false;
};

std::string join_params(std::span<const double> p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ";" : "") + format_real(p[i]);
  return out;
}

std::string fmt(double v) { return format_real(v); }

Json amplitudes_json(const StateVector& s) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    re.push_back(s[i].real());
    im.push_back(s[i].imag());
  }
  return Json{{"re", re}, {"im", im}};
}

Json versions_json() {
  return Json{{"gmepower", std::string(kVersion)},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)},
              {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
#if defined(__clang__)
              {"compiler", "clang " __clang_version__}
#elif defined(__GNUC__)
              {"compiler", "gcc " __VERSION__}
#else
              {"compiler", "unknown"}
#endif
  };
}

std::string ks_text(std::span<const int> ks) {
  std::string out;
  for (std::size_t i = 0; i < ks.size(); ++i) out += (i ? " " : "") + std::to_string(ks[i]);
  return out;
}

const std::vector<std::string> kEvalHeader{"family", "params", "k", "g_max", "boundary_flag", "seed"};

Outcome cmd_ggm(const ExperimentConfig& c) {
  const StateVector psi = parse_state(c.state);
  const GgmValue g = ggm(psi);
  Outcome o;
  o.csv.header = {"state", "ggm", "argmax_cut"};
  o.csv.rows.push_back({c.state, fmt(g.value), g.argmax_cut.label()});
  o.results = Json{{"state", c.state}, {"ggm", g.value}, {"argmax_cut", g.argmax_cut.label()}};
  std::ostringstream s;
  s << c.state << " G = " << std::setprecision(12) << g.value << " (argmax cut " << g.argmax_cut.label() << ")";
  o.summary = s.str();
  return o;
}

Outcome cmd_power_max(const ExperimentConfig& c, std::ostream& err) {
  const UnitaryMatrix u = build_gate(c.gate);
  OptimizerConfig opt = resolved_optimizer(c, c.gate.family);
  opt.threads = c.threads;
  Outcome o;
  o.csv.header = kEvalHeader;
  Json per_k = Json::array();
  std::ostringstream s;
  s << to_string(c.gate.family);
  for (int k : c.ks) {
    const auto r = max_power(u, k, opt);
    if (!r.converged) err << "warning: no start converged for k=" << k << "; reporting the best value seen\n";
    o.csv.rows.push_back({std::string(to_string(c.gate.family)), join_params(c.gate.params), std::to_string(k),
                          fmt(r.g_max), r.boundary_flag ? "1" : "0", std::to_string(opt.seed)});
    per_k.push_back(Json{{"k", k},
                         {"g_max", r.g_max},
                         {"layout", r.layout_chosen.label()},
                         {"angles", r.best_params.angles},
                         {"phases", r.best_params.phases},
                         {"best_input", amplitudes_json(r.best_input)},
                         {"best_output", amplitudes_json(r.best_output)},
                         {"starts_converged", r.starts_converged},
                         {"starts_total", r.starts_total},
                         {"converged", r.converged},
                         {"boundary_flag", r.boundary_flag},
                         {"freeze_phases", opt.freeze_phases}});
    s << " G_max^" << k << " = " << std::setprecision(10) << r.g_max << (r.boundary_flag ? " (boundary)" : "");
  }
  o.results = Json{{"per_k", per_k}};
  o.summary = s.str();
  return o;
}

Outcome cmd_power_avg(const ExperimentConfig& c) {
  const UnitaryMatrix u = build_gate(c.gate);
  Outcome o;
  o.csv.header = {"family", "params", "k", "mean", "std_error", "samples", "seed"};
  Json per_k = Json::array();
  std::ostringstream s;
  s << to_string(c.gate.family);
  for (int k : c.ks) {
    const auto a = average_power(u, k, c.samples, c.optimizer.ent_floor, c.optimizer.seed, c.threads);
    o.csv.rows.push_back({std::string(to_string(c.gate.family)), join_params(c.gate.params), std::to_string(k),
                          fmt(a.mean), fmt(a.std_error), std::to_string(a.samples), std::to_string(c.optimizer.seed)});
    per_k.push_back(Json{{"k", k}, {"mean", a.mean}, {"std_error", a.std_error}, {"samples", a.samples}});
    s << " avg^" << k << " = " << std::setprecision(8) << a.mean << " +- " << std::setprecision(2) << a.std_error;
  }
  o.results = Json{{"per_k", per_k}};
  o.summary = s.str();
  return o;
}

Outcome cmd_scan(const ExperimentConfig& c) {
  const int index = parameter_index(c.gate.family, c.sweep_param, c.gate.n);
  const auto values = c.sweep.values();
  OptimizerConfig opt = resolved_optimizer(c, c.gate.family);
  const auto points = max_power_curve(c.gate, index, values, c.ks, opt, c.threads);
  Outcome o;
  o.csv.header = kEvalHeader;
  o.csv.header.push_back(c.sweep_param);
  Json xs = Json::array(), per_k = Json::object();
  double best = 0.0;
  for (const auto& p : points) {
    GateSpec g = c.gate;
    g.params[static_cast<std::size_t>(index)] = p.param;
    o.csv.rows.push_back({std::string(to_string(g.family)), join_params(g.params), std::to_string(p.k), fmt(p.g_max),
                          p.boundary_flag ? "1" : "0", std::to_string(opt.seed), fmt(p.param)});
    per_k[std::to_string(p.k)].push_back(p.g_max);
    best = std::max(best, p.g_max);
  }
  for (double v : values) xs.push_back(v);
  o.results = Json{{"param", c.sweep_param}, {"values", xs}, {"g_max", per_k}, {"freeze_phases", opt.freeze_phases}};
  std::ostringstream s;
  s << points.size() << " evaluations over " << c.sweep_param << ", largest G_max " << std::setprecision(10) << best;
  o.summary = s.str();
  o.gnuplot = "set datafile separator ','; set xlabel '" + c.sweep_param +
              "'; set ylabel 'G_max'; plot for [k in '" + ks_text(c.ks) +
              "'] 'OUTPUT.csv' using 7:(strcol(3) eq k ? $4 : 1/0) with linespoints title 'k='.k";
  return o;
}

Outcome cmd_slices(const ExperimentConfig& c) {
  OptimizerConfig opt = resolved_optimizer(c, c.slice_family);
  const auto jx = c.jx.values(), jy = c.jy.values(), jz = c.jz.values();
  const auto rows = max_power_slices(c.slice_family, jx, jy, jz, c.ks.front(), opt, c.threads);
  Outcome o;
  o.csv.header = kEvalHeader;
  for (const char* col : {"jx", "jy", "jz"}) o.csv.header.push_back(col);
  double lo = 1.0, hi = 0.0;
  for (const auto& r : rows) {
    const std::array<double, 3> p{r.jx, r.jy, r.jz};
    o.csv.rows.push_back({std::string(to_string(c.slice_family)), join_params(p), std::to_string(c.ks.front()),
                          fmt(r.g_max), r.boundary_flag ? "1" : "0", std::to_string(opt.seed), fmt(r.jx), fmt(r.jy),
                          fmt(r.jz)});
    lo = std::min(lo, r.g_max);
    hi = std::max(hi, r.g_max);
  }
  o.results = Json{{"points", rows.size()}, {"min_g_max", lo}, {"max_g_max", hi}, {"k", c.ks.front()}};
  std::ostringstream s;
  s << rows.size() << " grid points, G_max in [" << std::setprecision(6) << lo << ", " << hi << "]";
  o.summary = s.str();
  o.gnuplot =
      "set datafile separator ','; set view map; set xlabel 'Jx'; set ylabel 'Jy'; "
      "splot 'OUTPUT.csv' using 7:8:($9 == JZ ? $4 : 1/0) with points palette pointtype 5";
  return o;
}

Outcome cmd_ensemble(const ExperimentConfig& c) {
  OptimizerConfig opt = resolved_optimizer(c, c.ensemble_family);
  const auto rep = ensemble_study(c.ensemble_family, c.ensemble_parties, c.ensemble_ops, c.ks, opt, c.bins, c.threads);
  Outcome o;
  o.csv.header = kEvalHeader;
  o.csv.header.push_back("op_index");
  o.csv.header.push_back("gate_seed");
  for (const auto& r : rep.records) {
    o.csv.rows.push_back({std::string(to_string(r.gate.family)), join_params(r.gate.params), std::to_string(r.k),
                          fmt(r.g_max), r.boundary_flag ? "1" : "0", std::to_string(opt.seed),
                          std::to_string(r.op_index), std::to_string(r.op_seed)});
  }
  Table hist;
  hist.header = {"k", "bin_center", "frequency"};
  Json stats = Json::array();
  std::ostringstream s;
  s << to_string(c.ensemble_family) << " x" << c.ensemble_ops;
  for (const auto& st : rep.stats) {
    Json centers = Json::array(), freqs = Json::array();
    for (const auto& b : st.histogram) {
      centers.push_back(b.center);
      freqs.push_back(b.frequency);
      hist.rows.push_back({std::to_string(st.k), fmt(b.center), fmt(b.frequency)});
    }
    stats.push_back(Json{{"k", st.k},
                         {"num_ops", st.num_ops},
                         {"mean", st.mean},
                         {"std_dev", st.std_dev},
                         {"bin_centers", centers},
                         {"frequencies", freqs}});
    s << " k=" << st.k << " mean " << std::setprecision(4) << st.mean << " sd " << st.std_dev;
  }
  if (rep.skipped) s << " (" << rep.skipped << " skipped)";
  o.hist = std::move(hist);
  o.results = Json{{"family", to_string(c.ensemble_family)},
                   {"parties", c.ensemble_parties},
                   {"freeze_phases", opt.freeze_phases},
                   {"skipped", rep.skipped},
                   {"stats", stats}};
  o.summary = s.str();
  o.gnuplot = "set datafile separator ','; set xlabel 'G_max'; set ylabel 'f'; plot for [k in '" + ks_text(c.ks) +
              "'] 'OUTPUT.hist.csv' using 2:(strcol(1) eq k ? $3 : 1/0) with histeps title 'k='.k";
  return o;
}

Outcome cmd_verify_tables(const ExperimentConfig& c, std::ostream& err) {
  std::vector<TranspositionTable> which;
  if (c.tables != "II") which.push_back(TranspositionTable::kI);
  if (c.tables != "I") which.push_back(TranspositionTable::kII);
  const OptimizerConfig opt = resolved_optimizer(c, GateFamily::kTransposition);

  Outcome o;
  o.csv.header = {"table", "number", "i", "j", "input", "ggm", "row_pass", "k", "optimum", "optimum_pass"};
  int rows = 0, rows_ok = 0, optima = 0, optima_ok = 0;
  Json tables = Json::array();
  for (auto t : which) {
    const auto rep = verify_table(t, !c.rows_only, opt, c.threads);
    const std::string name = t == TranspositionTable::kI ? "I" : "II";
    for (const auto& row : rep.rows) {
      const auto& e = row.entry;
      const std::string input = "(|" + e.ket_a + ">+|" + e.ket_b + ">)/sqrt2";
      o.csv.rows.push_back({name, std::to_string(e.number), std::to_string(e.i), std::to_string(e.j), input,
                            fmt(row.ggm), row.row_pass ? "1" : "0", std::to_string(rep.optimum_k),
                            row.optimum ? fmt(*row.optimum) : "", row.optimum_pass ? (*row.optimum_pass ? "1" : "0") : ""});
      if (!row.row_pass) {
        err << "table " << name << " row " << e.number << " (" << e.i << "," << e.j << ") on " << input << ": GGM "
            << std::setprecision(12) << row.ggm << ", expected 0.5; output amplitudes";
        for (std::size_t a = 0; a < row.output.dim(); ++a) err << " " << row.output[a];
        err << "\n";
      }
      if (row.optimum_pass && !*row.optimum_pass) {
        err << "table " << name << " row " << e.number << " (" << e.i << "," << e.j << "): optimum over k="
            << rep.optimum_k << " is " << std::setprecision(6) << *row.optimum
            << (t == TranspositionTable::kI ? ", expected < 0.499" : ", expected 0.33 +- 0.01")
            << " (ent_floor " << opt.ent_floor << ")\n";
      }
      if (row.optimum) ++optima;
    }
    rows += static_cast<int>(rep.rows.size());
    rows_ok += rep.rows_passed;
    optima_ok += rep.optima_passed;
    tables.push_back(Json{{"table", name},
                          {"rows_passed", rep.rows_passed},
                          {"optimum_k", rep.optimum_k},
                          {"optima_passed", rep.optima_passed}});
  }
  std::ostringstream s;
  s << rows_ok << "/" << rows << " rows pass";
  if (optima) s << "; optimizer checks " << optima_ok << "/" << optima << " pass (ent_floor " << opt.ent_floor << ")";
  o.summary = s.str();
  o.results = Json{{"tables", tables}, {"ent_floor", opt.ent_floor}, {"rows_only", c.rows_only}};
  o.verification_failed = rows_ok != rows || optima_ok != optima;
  return o;
}

std::filesystem::path with_suffix(const std::string& stem, std::string_view suffix) {
  return std::filesystem::path(stem + std::string(suffix));
}

void write_table(const std::filesystem::path& path, const Table& t) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) f << (i ? "," : "") << cells[i];
    f << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  if (!f) throw ConfigError("cannot write " + path.string());
}

void write_outputs(const ExperimentConfig& c, const Outcome& o, std::string_view command) {
  if (c.output.empty()) return;
  const std::filesystem::path base(c.output);
  if (base.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(base.parent_path(), ec);
    if (ec) throw ConfigError("[run] output: cannot create " + base.parent_path().string() + ": " + ec.message());
  }
  if (c.format != OutputFormat::kJson) {
    write_table(with_suffix(c.output, ".csv"), o.csv);
    if (o.hist) write_table(with_suffix(c.output, ".hist.csv"), *o.hist);
  }
  if (c.format != OutputFormat::kCsv) {
    Json j{{"command", command}, {"seed", c.optimizer.seed}, {"config", to_ini(c)}, {"versions", versions_json()},
           {"results", o.results}, {"csv_header", o.csv.header}, {"rows", o.csv.rows}};
    if (!o.gnuplot.empty()) {
      std::string hint = o.gnuplot;
      const std::string stem = base.filename().string();
      for (auto pos = hint.find("OUTPUT"); pos != std::string::npos; pos = hint.find("OUTPUT")) {
        hint.replace(pos, 6, stem);
      }
      j["gnuplot"] = hint;
    }
    std::ofstream f(with_suffix(c.output, ".json"), std::ios::binary);
    if (!f) throw ConfigError("cannot write " + c.output + ".json");
    f << j.dump(2) << "\n";
  }
}

template <class Body>
int guarded(std::string_view label, std::ostream& out, std::ostream& err, Body&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto [summary, failed] = body();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << label << ": " << summary << " [" << std::fixed << std::setprecision(2) << secs << " s]"
        << std::defaultfloat << "\n";
    return failed ? kExitVerificationFailed : kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const RejectionBudgetExhausted& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}

// ----- check-style recipes -----

struct Check {
  std::string name;
  std::string params;
  int k = 0;
  double expected = 0.0;
  double obtained = 0.0;
  bool pass = false;
};

Outcome checks_outcome(const std::vector<Check>& checks) {
  Outcome o;
  o.csv.header = {"check", "params", "k", "expected", "obtained", "pass"};
  Json arr = Json::array();
  int ok = 0;
  for (const auto& ch : checks) {
    o.csv.rows.push_back({ch.name, ch.params, std::to_string(ch.k), fmt(ch.expected), fmt(ch.obtained),
                          ch.pass ? "1" : "0"});
    ok += ch.pass ? 1 : 0;
  }
  o.results = Json{{"checks", checks.size()}, {"passed", ok}};
  o.summary = std::to_string(ok) + "/" + std::to_string(checks.size()) + " checks pass";
  o.verification_failed = ok != static_cast<int>(checks.size());
  return o;
}

Outcome eq15_check(const ExperimentConfig& c, std::ostream& err) {
  OptimizerConfig opt = resolved_optimizer(c, GateFamily::kDiagonalOnePhase);
  std::vector<Check> checks;
  const GateSpec gate{GateFamily::kDiagonalOnePhase, 4, {0.0}, std::nullopt};
  std::vector<double> phis;
  for (int i = 0; i < 8; ++i) phis.push_back(i * kPi / 4);
  const std::array<int, 1> k2{2};
  for (const auto& p : max_power_curve(gate, 0, phis, k2, opt, c.threads)) {
    const double s = std::pow(std::sin(p.param / 4), 2), co = std::pow(std::cos(p.param / 4), 2);
    const double expected = std::min(s, co);
    checks.push_back({"two-block optimum", "phi=" + fmt(p.param), 2, expected, p.g_max,
                      std::abs(p.g_max - expected) <= 2e-3});
  }
  const std::array<double, 1> pi{kPi};
  const std::array<int, 2> k34{3, 4};
  for (const auto& p : max_power_curve(gate, 0, pi, k34, opt, c.threads)) {
    checks.push_back({"below maximum", "phi=" + fmt(p.param), p.k, 0.49, p.g_max, p.g_max < 0.49});
  }
  for (const auto& ch : checks) {
    if (!ch.pass) err << ch.name << " " << ch.params << " k=" << ch.k << ": " << ch.obtained << "\n";
  }
  return checks_outcome(checks);
}

Outcome usp_conditions(const ExperimentConfig& c, std::ostream& err) {
  std::vector<Check> checks;
  const StateVector plus3 = parse_state("+++");
  const StateVector plus_phi = optimal_ghz_like_input(3, 1);
  const StateVector zeros = StateVector::from_bits("000");

  // Output GGM of |+++> against its closed form on a 10 x 10 x 10 grid.
  double worst = 0.0;
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) {
      for (int d = 0; d < 10; ++d) {
        const double jx = a * kPi / 10, jy = b * kPi / 10, jz = d * kPi / 10;
        const double cc = std::cos(2 * (jy - jz));
        const double formula = 1.0 - std::max((1 + cc) / 2, (1 - cc) / 2);
        worst = std::max(worst, std::abs(ggm(apply_unitary(usp1(jx, jy, jz), plus3)).value - formula));
      }
    }
  }
  checks.push_back({"usp1 |+++> closed form (max deviation)", "grid 10x10x10 on [0,pi)", 3, 0.0, worst, worst <= 1e-10});

  const double g1 = ggm(apply_unitary(usp1(kPi / 4, kPi / 2, kPi / 4), plus_phi)).value;
  checks.push_back({"usp1 on |+>|Phi+>", "pi/4;pi/2;pi/4", 2, 0.5, g1, std::abs(g1 - 0.5) <= 1e-6});

  Rng rng = make_rng(derive_seed(c.optimizer.seed, {0x05b2}));
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int t = 0; t < 5; ++t) {
    const double j2 = angle(rng), j4 = angle(rng);
    const double j1 = j2 + kPi / 4, j3 = -j4;
    const double g = ggm(apply_unitary(usp2(j1, j2, j3, j4), zeros)).value;
    checks.push_back({"usp2 J1-J2=pi/4, J3+J4=0 on |000>", join_params(std::array{j1, j2, j3, j4}), 3, 0.5, g,
                      std::abs(g - 0.5) <= 1e-6});
  }
  for (int t = 0; t < 5; ++t) {
    const double j1 = angle(rng), j4 = angle(rng);
    const double j2 = kPi / 4, j3 = j4 + kPi / 4;
    const double g = ggm(apply_unitary(usp2(j1, j2, j3, j4), plus_phi)).value;
    checks.push_back({"usp2 J2=pi/4, J3-J4=pi/4 on |+>|Phi+>", join_params(std::array{j1, j2, j3, j4}), 2, 0.5, g,
                      std::abs(g - 0.5) <= 1e-6});
  }
  for (const auto& ch : checks) {
    if (!ch.pass) err << ch.name << " at " << ch.params << ": GGM " << std::setprecision(10) << ch.obtained << "\n";
  }
  return checks_outcome(checks);
}

ExperimentConfig recipe_base(std::string_view name) {
  ExperimentConfig c;
  c.output = "results/" + std::string(name);
  return c;
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(to_string(config.command), out, err, [&]() -> std::pair<std::string, bool> {
    validate(config);
    Outcome o;
    switch (config.command) {
      case Command::kGgm:
        o = cmd_ggm(config);
        break;
      case Command::kPowerMax:
        o = cmd_power_max(config, err);
        break;
      case Command::kPowerAvg:
        o = cmd_power_avg(config);
        break;
      case Command::kScan:
        o = cmd_scan(config);
        break;
      case Command::kSlices:
        o = cmd_slices(config);
        break;
      case Command::kEnsemble:
        o = cmd_ensemble(config);
        break;
      case Command::kVerifyTables:
        o = cmd_verify_tables(config, err);
        break;
    }
    write_outputs(config, o, to_string(config.command));
    return {o.summary, o.verification_failed};
  });
}

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> kRecipes{
      {"fig2", "max GGM of diag(1,...,1,e^{i phi}) on three qubits against phi, biseparable and fully separable inputs"},
      {"fig3", "frequency distribution of G_max for random diagonal three-qubit unitaries, k = 2 and 3"},
      {"fig4", "G_max over fully separable inputs for usp1 on a (Jx, Jy, Jz) grid"},
      {"fig5", "G_max of usp3 against Jx at Jy = Jz = 0.1, biseparable and fully separable inputs"},
      {"fig6", "frequency distribution of G_max for Haar-random three-qubit unitaries, k = 2 and 3"},
      {"table1", "transpositions reaching GGM 1/2 from fully separable inputs, plus their biseparable optima"},
      {"table2", "transpositions reaching GGM 1/2 from biseparable inputs, plus their fully separable optima"},
      {"eq15-check", "four-qubit diag(1,...,1,e^{i phi}): two-block optimum against min(sin^2, cos^2)(phi/4)"},
      {"usp-conditions", "closed-form |+++> output of usp1 and the parameter conditions for GGM 1/2 of usp1, usp2"},
  };
  return kRecipes;
}

void list_recipes(std::ostream& out) {
  for (const auto& r : recipes()) out << std::left << std::setw(16) << r.name << r.description << "\n";
}

ExperimentConfig recipe_config(std::string_view name) {
  ExperimentConfig c = recipe_base(name);
  if (name == "fig2") {
    c.command = Command::kScan;
    c.gate = {GateFamily::kDiagonalOnePhase, 3, {0.0}, std::nullopt};
    c.sweep_param = "phi";
    c.sweep = {0.0, 2 * kPi, 64};
  } else if (name == "fig3" || name == "fig6") {
    c.command = Command::kEnsemble;
    c.ensemble_family = name == "fig3" ? GateFamily::kDiagonalGeneral : GateFamily::kHaar;
    c.ensemble_ops = 500;
  } else if (name == "fig4") {
    c.command = Command::kSlices;
    c.slice_family = GateFamily::kUsp1;
    c.ks = {3};
  } else if (name == "fig5") {
    c.command = Command::kScan;
    c.gate = {GateFamily::kUsp3, 3, {0.0, 0.1, 0.1}, std::nullopt};
    c.sweep_param = "jx";
    c.sweep = {0.0, kPi, 41};
  } else if (name == "table1" || name == "table2") {
    c.command = Command::kVerifyTables;
    c.tables = name == "table1" ? "I" : "II";
  } else {
    throw std::invalid_argument("no single-command recipe named '" + std::string(name) + "'");
  }
  return c;
}

int run_recipe(std::string_view name, const std::function<void(ExperimentConfig&)>& customize, std::ostream& out,
               std::ostream& err) {
  if (name == "eq15-check" || name == "usp-conditions") {
    ExperimentConfig c = recipe_base(name);
    if (customize) customize(c);
    return guarded(name, out, err, [&]() -> std::pair<std::string, bool> {
      const Outcome o = name == "eq15-check" ? eq15_check(c, err) : usp_conditions(c, err);
      write_outputs(c, o, name);
      return {o.summary, o.verification_failed};
    });
  }
  ExperimentConfig c;
  try {
    c = recipe_config(name);
  } catch (const std::invalid_argument& e) {
    err << "config error: unknown recipe '" << name << "'; see list-recipes\n";
    return kExitConfigError;
  }
  if (customize) customize(c);
  return run(c, out, err);
}

}  // namespace gmepower::experiments
