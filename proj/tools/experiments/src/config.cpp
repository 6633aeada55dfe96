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


#include "gmepower/experiments/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace gmepower::experiments {

namespace {

namespace pt = boost::property_tree;

constexpr std::array<std::pair<Command, std::string_view>, 7> kCommands{{
    {Command::kGgm, "ggm"},
    {Command::kPowerMax, "power-max"},
    {Command::kPowerAvg, "power-avg"},
    {Command::kScan, "scan"},
    {Command::kSlices, "slices"},
    {Command::kEnsemble, "ensemble"},
    {Command::kVerifyTables, "verify-tables"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

// Line of every "key = value" as "section.key", for error messages.
std::map<std::string, int> key_lines(std::string_view text) {
  std::map<std::string, int> lines;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == ';' || t.front() == '#') continue;
    if (t.front() == '[') {
      section = std::string(trim(t.substr(1, t.find(']') - 1)));
      lines.emplace(section, line_no);
      continue;
    }
    const auto eq = t.find('=');
    if (eq != std::string_view::npos) lines.emplace(section + "." + std::string(trim(t.substr(0, eq))), line_no);
  }
  return lines;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::string_view text, std::string_view source)
      : tree_(tree), lines_(key_lines(text)), source_(source) {}

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& why) const {
    const std::string path = key.empty() ? section : section + "." + key;
    const auto it = lines_.find(path);
    std::string where(source_);
    if (it != lines_.end()) where += ":" + std::to_string(it->second);
    throw ConfigError(where + ": [" + section + "]" + (key.empty() ? "" : " " + key) + ": " + why);
  }

  // Calls fn(value) for a present key, turning exceptions into located errors.
  template <class Fn>
  void with(const std::string& section, const std::string& key, Fn&& fn) const {
    const auto child = tree_.get_child_optional(pt::ptree::path_type(section + "." + key, '.'));
    if (!child) return;
    try {
      fn(std::string(trim(child->data())));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(section, key, e.what());
    }
  }

  void only(const std::string& section, std::initializer_list<std::string_view> keys) const {
    const auto child = tree_.get_child_optional(section);
    if (!child) return;
    for (const auto& [key, _] : *child) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail(section, key, "unknown key");
    }
  }

 private:
  const pt::ptree& tree_;
  std::map<std::string, int> lines_;
  std::string_view source_;
};

template <class T>
T parse_number(std::string_view s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("'" + std::string(s) + "' is not a valid integer");
  }
  return value;
}

int positive_int(std::string_view s) {
  const int v = parse_number<int>(s);
  if (v < 1) throw std::invalid_argument("must be at least 1");
  return v;
}

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "off" || s == "no" || s == "0") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(s) + "'");
}

Range parse_range(std::string_view s) {
  const auto v = parse_real_list(s);
  if (v.size() != 3 || v[2] != std::floor(v[2]) || v[2] < 1) {
    throw std::invalid_argument("expected 'from, to, points' with points >= 1");
  }
  return {v[0], v[1], static_cast<int>(v[2])};
}

FreezeMode parse_freeze(std::string_view s) {
  if (s == "auto") return FreezeMode::kAuto;
  return parse_bool(s) ? FreezeMode::kOn : FreezeMode::kOff;
}

std::string_view freeze_name(FreezeMode m) {
  switch (m) {
    case FreezeMode::kAuto:
      return "auto";
    case FreezeMode::kOn:
      return "on";
    case FreezeMode::kOff:
      break;
  }
  return "off";
}

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kJson:
      return "json";
    case OutputFormat::kBoth:
      break;
  }
  return "both";
}

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  if (s == "both") return OutputFormat::kBoth;
  throw std::invalid_argument("expected csv, json or both");
}

std::vector<Layout> parse_layouts(std::string_view s, int n) {
  std::vector<Layout> out;
  std::string_view rest = s;
  while (!trim(rest).empty()) {
    const auto comma = rest.find(',');
    out.push_back(parse_layout(trim(rest.substr(0, comma)), n));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::string join_reals(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_real(v[i]);
  return out;
}

std::string range_text(const Range& r) {
  return format_real(r.from) + ", " + format_real(r.to) + ", " + std::to_string(r.points);
}

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& [c, name] : kCommands) {
    if (c == command) return name;
  }
  return "?";
}

Command parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommands) {
    if (n == name) return c;
  }
  throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

std::vector<double> Range::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = points == 1 ? from : from + (to - from) * i / (points - 1);
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number<int>(trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

int parameter_index(GateFamily family, std::string_view name, int n) {
  const int arity = family_arity(family, n);
  if (name.empty()) throw std::invalid_argument("empty parameter name");
  int index = -1;
  if (name == "phi" && family == GateFamily::kDiagonalOnePhase) {
    index = 0;
  } else if (name == "jx") {
    index = 0;
  } else if (name == "jy") {
    index = 1;
  } else if (name == "jz") {
    index = 2;
  } else if (name == "j4" && family == GateFamily::kUsp2) {
    index = 3;
  } else if (name.size() > 1 && name.front() == 'p') {
    index = parse_number<int>(name.substr(1));
  }
  const bool coupling = family == GateFamily::kUsp1 || family == GateFamily::kUsp2 || family == GateFamily::kUsp3;
  if (name.front() == 'j' && !coupling) index = -1;
  if (index < 0 || index >= arity) {
    throw std::invalid_argument("no parameter '" + std::string(name) + "' in " + std::string(to_string(family)));
  }
  return index;
}

StateVector parse_state(std::string_view name) {
  const auto numbered = [&](std::string_view prefix) -> std::optional<int> {
    if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
    return parse_number<int>(name.substr(prefix.size()));
  };
  if (const auto n = numbered("ghz")) {
    const std::size_t dim = std::size_t{1} << *n;
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v[0] = v[static_cast<Eigen::Index>(dim - 1)] = 1.0;
    return StateVector::normalized(v);
  }
  if (const auto n = numbered("w")) {
    CVector v = CVector::Zero(Eigen::Index{1} << *n);
    for (int p = 0; p < *n; ++p) v[Eigen::Index{1} << p] = 1.0;
    return StateVector::normalized(v);
  }
  if (name.empty() || name.find_first_not_of("01+-") != std::string_view::npos) {
    throw std::invalid_argument("unknown state '" + std::string(name) + "'");
  }
  const double h = 1.0 / std::sqrt(2.0);
  std::optional<StateVector> out;
  for (char c : name) {
    CVector q(2);
    switch (c) {
      case '0':
        q << 1.0, 0.0;
        break;
      case '1':
        q << 0.0, 1.0;
        break;
      case '+':
        q << h, h;
        break;
      default:
        q << h, -h;
    }
    const StateVector s = StateVector::normalized(q);
    out = out ? tensor_product(*out, s) : s;
  }
  return *out;
}

ExperimentConfig parse_config(std::string_view text, std::string_view source, const ExperimentConfig& base) {
  pt::ptree tree;
  {
    std::istringstream in{std::string(text)};
    try {
      pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
      throw ConfigError(std::string(source) + ":" + std::to_string(e.line()) + ": " + e.message());
    }
  }
  const Reader r(tree, text, source);
  for (const auto& [section, _] : tree) {
    static constexpr std::array<std::string_view, 9> kSections{"run",    "gate",     "optimizer", "state", "sweep",
                                                               "slices", "ensemble", "average",   "tables"};
    if (std::find(kSections.begin(), kSections.end(), section) == kSections.end()) {
      r.fail(section, "", "unknown section");
    }
  }
  r.only("run", {"command", "k", "output", "format", "threads"});
  r.only("optimizer", {"restarts", "max_iters", "step_tol", "value_tol", "ent_floor", "seed", "freeze_phases", "layouts"});
  r.only("state", {"name"});
  r.only("sweep", {"param", "from", "to", "points"});
  r.only("slices", {"family", "jx", "jy", "jz"});
  r.only("ensemble", {"family", "parties", "ops", "bins"});
  r.only("average", {"samples"});
  r.only("tables", {"which", "rows_only"});

  ExperimentConfig c = base;
  r.with("run", "command", [&](const std::string& v) { c.command = parse_command(v); });
  r.with("run", "k", [&](const std::string& v) { c.ks = parse_int_list(v); });
  r.with("run", "output", [&](const std::string& v) { c.output = v; });
  r.with("run", "format", [&](const std::string& v) { c.format = parse_format(v); });
  r.with("run", "threads", [&](const std::string& v) { c.threads = parse_number<int>(v); });

  if (tree.get_child_optional("gate")) {
    // Fill omitted keys from the base gate so partial sections work.
    const auto& g = tree.get_child("gate");
    GateSpec merged = c.gate;
    try {
      const std::string family = g.get<std::string>("family", std::string(to_string(merged.family)));
      const int parties = g.count("parties") ? parse_number<int>(trim(g.get<std::string>("parties"))) : merged.n;
      // Omitted params keep the base values when the family is unchanged and
      // default to zeros otherwise.
      std::string params;
      if (g.count("params")) {
        params = g.get<std::string>("params");
      } else if (family == to_string(merged.family) && parties == merged.n) {
        params = join_reals(merged.params);
      } else {
        const auto f = parse_gate_family(family);
        if (f != GateFamily::kCustom) {
          params = join_reals(std::vector<double>(static_cast<std::size_t>(family_arity(f, parties)), 0.0));
        }
      }
      std::optional<std::uint64_t> seed;
      if (g.count("seed")) seed = parse_number<std::uint64_t>(trim(g.get<std::string>("seed")));
      merged = make_gate_spec(family, parties, params, seed);
    } catch (const std::exception& e) {
      std::string what = e.what();
      std::string key;
      for (std::string_view k : {"family", "parties", "params", "seed"}) {
        const std::string prefix = std::string(k) + ": ";
        if (what.rfind(prefix, 0) == 0) {
          key = k;
          what = what.substr(prefix.size());
        }
      }
      r.fail("gate", key, what);
    }
    r.only("gate", {"family", "parties", "params", "seed"});
    c.gate = merged;
  }

  auto& o = c.optimizer;
  r.with("optimizer", "restarts", [&](const std::string& v) { o.restarts = positive_int(v); });
  r.with("optimizer", "max_iters", [&](const std::string& v) { o.max_iters = positive_int(v); });
  r.with("optimizer", "step_tol", [&](const std::string& v) { o.step_tol = parse_real(v); });
  r.with("optimizer", "value_tol", [&](const std::string& v) { o.value_tol = parse_real(v); });
  r.with("optimizer", "ent_floor", [&](const std::string& v) { o.ent_floor = parse_real(v); });
  r.with("optimizer", "seed", [&](const std::string& v) { o.seed = parse_number<std::uint64_t>(v); });
  r.with("optimizer", "freeze_phases", [&](const std::string& v) { c.freeze = parse_freeze(v); });
  r.with("optimizer", "layouts", [&](const std::string& v) {
    const int n = c.command == Command::kEnsemble ? c.ensemble_parties : c.gate.n;
    o.layouts = parse_layouts(v, n);
  });
  try {
    validate(o);
  } catch (const std::invalid_argument& e) {
    r.fail("optimizer", "", e.what());
  }

  r.with("state", "name", [&](const std::string& v) {
    parse_state(v);
    c.state = v;
  });
  r.with("sweep", "param", [&](const std::string& v) { c.sweep_param = v; });
  r.with("sweep", "from", [&](const std::string& v) { c.sweep.from = parse_real(v); });
  r.with("sweep", "to", [&](const std::string& v) { c.sweep.to = parse_real(v); });
  r.with("sweep", "points", [&](const std::string& v) { c.sweep.points = positive_int(v); });
  r.with("slices", "family", [&](const std::string& v) { c.slice_family = parse_gate_family(v); });
  r.with("slices", "jx", [&](const std::string& v) { c.jx = parse_range(v); });
  r.with("slices", "jy", [&](const std::string& v) { c.jy = parse_range(v); });
  r.with("slices", "jz", [&](const std::string& v) { c.jz = parse_range(v); });
  r.with("ensemble", "family", [&](const std::string& v) { c.ensemble_family = parse_gate_family(v); });
  r.with("ensemble", "parties", [&](const std::string& v) { c.ensemble_parties = positive_int(v); });
  r.with("ensemble", "ops", [&](const std::string& v) { c.ensemble_ops = positive_int(v); });
  r.with("ensemble", "bins", [&](const std::string& v) { c.bins = positive_int(v); });
  r.with("average", "samples", [&](const std::string& v) { c.samples = positive_int(v); });
  r.with("tables", "which", [&](const std::string& v) {
    if (v != "I" && v != "II" && v != "both") throw std::invalid_argument("expected I, II or both");
    c.tables = v;
  });
  r.with("tables", "rows_only", [&](const std::string& v) { c.rows_only = parse_bool(v); });

  try {
    validate(c);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  return c;
}

std::string to_ini(const ExperimentConfig& c) {
  std::ostringstream os;
  std::string ks;
  for (std::size_t i = 0; i < c.ks.size(); ++i) ks += (i ? ", " : "") + std::to_string(c.ks[i]);
  os << "[run]\ncommand = " << to_string(c.command) << "\nk = " << ks << "\noutput = " << c.output
     << "\nformat = " << format_name(c.format) << "\nthreads = " << c.threads << "\n\n";
  os << to_ini(c.gate) << "\n";
  const auto& o = c.optimizer;
  std::string layouts;
  for (std::size_t i = 0; i < o.layouts.size(); ++i) layouts += (i ? ", " : "") + o.layouts[i].label();
  os << "[optimizer]\nrestarts = " << o.restarts << "\nmax_iters = " << o.max_iters
     << "\nstep_tol = " << format_real(o.step_tol) << "\nvalue_tol = " << format_real(o.value_tol)
     << "\nent_floor = " << format_real(o.ent_floor) << "\nseed = " << o.seed
     << "\nfreeze_phases = " << freeze_name(c.freeze) << "\nlayouts = " << layouts << "\n\n";
  os << "[state]\nname = " << c.state << "\n\n";
  os << "[sweep]\nparam = " << c.sweep_param << "\nfrom = " << format_real(c.sweep.from)
     << "\nto = " << format_real(c.sweep.to) << "\npoints = " << c.sweep.points << "\n\n";
  os << "[slices]\nfamily = " << to_string(c.slice_family) << "\njx = " << range_text(c.jx)
     << "\njy = " << range_text(c.jy) << "\njz = " << range_text(c.jz) << "\n\n";
  os << "[ensemble]\nfamily = " << to_string(c.ensemble_family) << "\nparties = " << c.ensemble_parties
     << "\nops = " << c.ensemble_ops << "\nbins = " << c.bins << "\n\n";
  os << "[average]\nsamples = " << c.samples << "\n\n";
  os << "[tables]\nwhich = " << c.tables << "\nrows_only = " << (c.rows_only ? "true" : "false") << "\n";
  return os.str();
}

void validate(const ExperimentConfig& c) {
  const int n = c.command == Command::kEnsemble ? c.ensemble_parties : c.gate.n;
  const bool uses_k = c.command == Command::kPowerMax || c.command == Command::kPowerAvg ||
                      c.command == Command::kScan || c.command == Command::kSlices ||
                      c.command == Command::kEnsemble;
  if (uses_k) {
    if (c.ks.empty()) throw ConfigError("[run] k: at least one class is required");
    for (int k : c.ks) {
      if (k < 2 || k > n) {
        throw ConfigError("[run] k: " + std::to_string(k) + " is outside 2.." + std::to_string(n));
      }
    }
  }
  for (const auto& l : c.optimizer.layouts) {
    if (l.n != n) throw ConfigError("[optimizer] layouts: " + l.label() + " does not cover " + std::to_string(n) + " parties");
  }
  if (c.threads < 0) throw ConfigError("[run] threads: must be non-negative");
  if (c.command == Command::kScan) {
    try {
      parameter_index(c.gate.family, c.sweep_param, c.gate.n);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("[sweep] param: ") + e.what());
    }
    if (!std::isfinite(c.sweep.from) || !std::isfinite(c.sweep.to)) {
      throw ConfigError("[sweep] from/to: bounds must be finite");
    }
  }
  if (c.command == Command::kSlices) {
    if (c.slice_family != GateFamily::kUsp1 && c.slice_family != GateFamily::kUsp3) {
      throw ConfigError("[slices] family: usp1 or usp3 expected");
    }
    for (const Range* g : {&c.jx, &c.jy, &c.jz}) {
      if (!std::isfinite(g->from) || !std::isfinite(g->to)) throw ConfigError("[slices] grid bounds must be finite");
    }
    if (c.ks.size() != 1) throw ConfigError("[run] k: slices take a single class");
  }
  if (c.command == Command::kEnsemble && c.ensemble_family != GateFamily::kHaar &&
      c.ensemble_family != GateFamily::kDiagonalGeneral) {
    throw ConfigError("[ensemble] family: haar or diag-general expected");
  }
  if (c.command == Command::kGgm) {
    try {
      parse_state(c.state);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("[state] name: ") + e.what());
    }
  }
}

OptimizerConfig resolved_optimizer(const ExperimentConfig& c, GateFamily family) {
  OptimizerConfig o = c.optimizer;
  switch (c.freeze) {
    case FreezeMode::kAuto:
      o.freeze_phases = default_freeze_phases(family);
      break;
    case FreezeMode::kOn:
      o.freeze_phases = true;
      break;
    case FreezeMode::kOff:
      o.freeze_phases = false;
      break;
  }
  return o;
}

}  // namespace gmepower::experiments
