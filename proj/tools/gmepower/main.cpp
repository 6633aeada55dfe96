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


#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmepower/experiments/config.hpp"
#include "gmepower/experiments/run.hpp"
#include "gmepower/version.hpp"

namespace ex = gmepower::experiments;

namespace {

// Flags shared by every command; unset ones leave the config untouched.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> output, format, k, params, freeze, state, param, table, jx, jy, jz, family;
  std::optional<int> threads, parties, restarts, max_iters, points, samples, ops, bins;
  std::optional<double> step_tol, value_tol, ent_floor, from, to;
  std::optional<std::uint64_t> seed, gate_seed;
  std::vector<std::string> layouts;
  bool rows_only = false;

  void add_common(CLI::App* app) {
    app->add_option("--config", config_path, "INI file with any of the documented sections")->check(CLI::ExistingFile);
    app->add_option("--output", output, "Result path stem; writes <stem>.csv and <stem>.json");
    app->add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
    app->add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    app->add_option("--seed", seed, "Base seed (default: $GMEPOWER_SEED, else 1)");
  }
  void add_gate(CLI::App* app) {
    app->add_option("--family", family, "Gate family");
    app->add_option("--parties", parties, "Number of qubits");
    app->add_option("--params", params, "Comma-separated gate parameters; accepts forms like 3pi/4");
    app->add_option("--gate-seed", gate_seed, "Seed of a haar gate");
  }
  void add_optimizer(CLI::App* app) {
    app->add_option("--k", k, "Separability class or comma-separated list");
    app->add_option("--restarts", restarts, "Local searches per layout");
    app->add_option("--max-iters", max_iters, "Simplex iterations per search");
    app->add_option("--step-tol", step_tol, "Simplex size tolerance (radians)");
    app->add_option("--value-tol", value_tol, "Objective spread tolerance");
    app->add_option("--ent-floor", ent_floor, "Minimal block entanglement of inputs");
    app->add_option("--freeze-phases", freeze, "auto, on or off")->check(CLI::IsMember({"auto", "on", "off"}));
    app->add_option("--layout", layouts, "Restrict a class to this layout, e.g. 0|12 (repeatable)");
  }

  void apply(ex::ExperimentConfig& c) const {
    if (output) c.output = *output;
    if (threads) c.threads = *threads;
    if (seed) c.optimizer.seed = *seed;

    std::string ini;
    if (format) ini += "[run]\nformat = " + *format + "\n";
    if (k) ini += (ini.empty() ? "[run]\n" : "") + std::string("k = ") + *k + "\n";

    const bool ensemble = c.command == ex::Command::kEnsemble;
    const bool slices = c.command == ex::Command::kSlices;
    if (family || parties || params || gate_seed) {
      if (ensemble) {
        ini += "[ensemble]\n";
        if (family) ini += "family = " + *family + "\n";
        if (parties) ini += "parties = " + std::to_string(*parties) + "\n";
      } else if (slices && family) {
        ini += "[slices]\nfamily = " + *family + "\n";
      } else {
        ini += "[gate]\n";
        if (family) ini += "family = " + *family + "\n";
        if (parties) ini += "parties = " + std::to_string(*parties) + "\n";
        if (params) ini += "params = " + *params + "\n";
        if (gate_seed) ini += "seed = " + std::to_string(*gate_seed) + "\n";
      }
    }
    std::string opt;
    if (restarts) opt += "restarts = " + std::to_string(*restarts) + "\n";
    if (max_iters) opt += "max_iters = " + std::to_string(*max_iters) + "\n";
    if (step_tol) opt += "step_tol = " + gmepower::format_real(*step_tol) + "\n";
    if (value_tol) opt += "value_tol = " + gmepower::format_real(*value_tol) + "\n";
    if (ent_floor) opt += "ent_floor = " + gmepower::format_real(*ent_floor) + "\n";
    if (freeze) opt += "freeze_phases = " + *freeze + "\n";
    if (!layouts.empty()) {
      opt += "layouts = ";
      for (std::size_t i = 0; i < layouts.size(); ++i) opt += (i ? ", " : "") + layouts[i];
      opt += "\n";
    }
    if (!opt.empty()) ini += "[optimizer]\n" + opt;
    if (state) ini += "[state]\nname = " + *state + "\n";
    if (param || from || to || points) {
      ini += "[sweep]\n";
      if (param) ini += "param = " + *param + "\n";
      if (from) ini += "from = " + gmepower::format_real(*from) + "\n";
      if (to) ini += "to = " + gmepower::format_real(*to) + "\n";
      if (points) ini += "points = " + std::to_string(*points) + "\n";
    }
    if (jx || jy || jz) {
      ini += "[slices]\n";
      if (jx) ini += "jx = " + *jx + "\n";
      if (jy) ini += "jy = " + *jy + "\n";
      if (jz) ini += "jz = " + *jz + "\n";
    }
    if (ops || bins) {
      ini += "[ensemble]\n";
      if (ops) ini += "ops = " + std::to_string(*ops) + "\n";
      if (bins) ini += "bins = " + std::to_string(*bins) + "\n";
    }
    if (samples) ini += "[average]\nsamples = " + std::to_string(*samples) + "\n";
    if (table || rows_only) {
      ini += "[tables]\n";
      if (table) ini += "which = " + *table + "\n";
      if (rows_only) ini += "rows_only = true\n";
    }
    // Flags travel through the same parser as files so validation and error
    // wording are shared; the source tag names them as flags.
    if (!ini.empty()) c = ex::parse_config(ini, "<flags>", c);
  }
};

std::uint64_t env_seed() {
  const char* s = std::getenv("GMEPOWER_SEED");
  if (!s || !*s) return 1;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ex::ConfigError("GMEPOWER_SEED: '" + std::string(s) + "' is not an unsigned integer");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ex::ConfigError(path + ": cannot read");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

ex::ExperimentConfig base_config(std::optional<ex::Command> command, const Overrides& o) {
  ex::ExperimentConfig c;
  c.optimizer.seed = env_seed();
  if (command) c.command = *command;
  if (o.config_path) {
    c = ex::parse_config(read_file(*o.config_path), *o.config_path, c);
    if (command) c.command = *command;
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entangling power of multiqubit gates over k-separable inputs"};
  app.set_version_flag("--version", std::string(gmepower::kVersion));
  app.require_subcommand(1);

  Overrides o;
  std::string recipe_name;
  std::vector<std::pair<CLI::App*, ex::Command>> commands;

  auto* ggm = app.add_subcommand("ggm", "GGM of a named state");
  o.add_common(ggm);
  ggm->add_option("--state", o.state, "ghzN, wN, or a ket over 0 1 + - such as +01");
  commands.emplace_back(ggm, ex::Command::kGgm);

  auto* pmax = app.add_subcommand("power-max", "Maximal entangling power of one gate");
  o.add_common(pmax);
  o.add_gate(pmax);
  o.add_optimizer(pmax);
  commands.emplace_back(pmax, ex::Command::kPowerMax);

  auto* pavg = app.add_subcommand("power-avg", "Average entangling power over Haar-random k-separable inputs");
  o.add_common(pavg);
  o.add_gate(pavg);
  o.add_optimizer(pavg);
  pavg->add_option("--samples", o.samples, "Monte Carlo samples");
  commands.emplace_back(pavg, ex::Command::kPowerAvg);

  auto* scan = app.add_subcommand("scan", "Maximal power along one gate parameter");
  o.add_common(scan);
  o.add_gate(scan);
  o.add_optimizer(scan);
  scan->add_option("--param", o.param, "phi, jx, jy, jz, j4 or pN");
  scan->add_option("--from", o.from);
  scan->add_option("--to", o.to);
  scan->add_option("--points", o.points);
  commands.emplace_back(scan, ex::Command::kScan);

  auto* slices = app.add_subcommand("slices", "Maximal power of usp1/usp3 on a (Jx, Jy, Jz) grid");
  o.add_common(slices);
  o.add_optimizer(slices);
  slices->add_option("--family", o.family, "usp1 or usp3");
  slices->add_option("--jx", o.jx, "from, to, points");
  slices->add_option("--jy", o.jy, "from, to, points");
  slices->add_option("--jz", o.jz, "from, to, points");
  commands.emplace_back(slices, ex::Command::kSlices);

  auto* ens = app.add_subcommand("ensemble", "Statistics of G_max over random diag-general or haar gates");
  o.add_common(ens);
  o.add_optimizer(ens);
  ens->add_option("--family", o.family, "diag-general or haar");
  ens->add_option("--parties", o.parties);
  ens->add_option("--ops", o.ops, "Number of random gates");
  ens->add_option("--bins", o.bins, "Histogram bins on [0, 0.5]");
  commands.emplace_back(ens, ex::Command::kEnsemble);

  auto* vt = app.add_subcommand("verify-tables", "Check the transposition tables");
  o.add_common(vt);
  o.add_optimizer(vt);
  vt->add_option("--table", o.table, "I, II or both")->check(CLI::IsMember({"I", "II", "both"}));
  vt->add_flag("--rows-only", o.rows_only, "Skip the optimizer checks");
  commands.emplace_back(vt, ex::Command::kVerifyTables);

  auto* list = app.add_subcommand("list-recipes", "List the built-in reproduction recipes");

  auto* recipe = app.add_subcommand("recipe", "Run a built-in recipe");
  recipe->add_option("name", recipe_name, "Recipe name (see list-recipes)")->required();
  o.add_common(recipe);
  o.add_optimizer(recipe);
  recipe->add_option("--ops", o.ops, "Ensemble size for fig3/fig6");
  recipe->add_option("--points", o.points, "Sweep points for fig2/fig5");

  auto* run = app.add_subcommand("run", "Run the command named in a config file");
  o.add_common(run);
  o.add_optimizer(run);
  run->get_option("--config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ex::kExitConfigError;
  }

  try {
    if (list->parsed()) {
      ex::list_recipes(std::cout);
      return ex::kExitOk;
    }
    if (recipe->parsed()) {
      const std::uint64_t seed = env_seed();
      return ex::run_recipe(
          recipe_name,
          [&](ex::ExperimentConfig& c) {
            c.optimizer.seed = seed;
            if (o.config_path) c = ex::parse_config(read_file(*o.config_path), *o.config_path, c);
            o.apply(c);
          },
          std::cout, std::cerr);
    }
    if (run->parsed()) {
      ex::ExperimentConfig c = base_config(std::nullopt, o);
      o.apply(c);
      return ex::run(c, std::cout, std::cerr);
    }
    for (const auto& [sub, command] : commands) {
      if (!sub->parsed()) continue;
      ex::ExperimentConfig c = base_config(command, o);
      o.apply(c);
      return ex::run(c, std::cout, std::cerr);
    }
  } catch (const ex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ex::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ex::kExitConfigError;
  }
  return ex::kExitConfigError;
}
