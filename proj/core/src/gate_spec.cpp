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

#include "gmepower/gate_spec.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "gmepower/gates.hpp"

namespace gmepower {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_plain(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

[[noreturn]] void bad_real(std::string_view text) {
  throw std::invalid_argument("cannot parse '" + std::string(text) + "' as a real number");
}

}  // namespace

double parse_real(std::string_view text) {
  const std::string_view s = trim(text);
  double value = 0.0;
  if (parse_plain(s, value)) return value;

  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) bad_real(text);
  std::string_view coeff = trim(s.substr(0, pi_pos));
  std::string_view denom = trim(s.substr(pi_pos + 2));

  double c = 1.0;
  if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
  if (coeff == "-") {
    c = -1.0;
  } else if (!coeff.empty() && coeff != "+" && !parse_plain(coeff, c)) {
    bad_real(text);
  }
  double d = 1.0;
  if (!denom.empty()) {
    if (denom.front() != '/' || !parse_plain(trim(denom.substr(1)), d) || d == 0.0) bad_real(text);
  }
  return c * std::numbers::pi / d;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_real(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_real(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

int family_arity(GateFamily family, int n) {
  switch (family) {
    case GateFamily::kIdentity:
    case GateFamily::kHaar:
      return 0;
    case GateFamily::kDiagonalGeneral:
      return 1 << n;
    case GateFamily::kDiagonalOnePhase:
      return 1;
    case GateFamily::kTransposition:
      return 2;
    case GateFamily::kUsp1:
    case GateFamily::kUsp3:
      return 3;
    case GateFamily::kUsp2:
      return 4;
    case GateFamily::kLocalProduct:
      return 3 * n;
    case GateFamily::kCustom:
      break;
  }
  throw std::invalid_argument("the custom family has no parametrization");
}

void validate(const GateSpec& spec) {
  if (spec.n < 1 || spec.n > kMaxParties) {
    throw std::invalid_argument("parties: must lie in 1.." + std::to_string(kMaxParties));
  }
  const int arity = family_arity(spec.family, spec.n);
  if (static_cast<int>(spec.params.size()) != arity) {
    throw std::invalid_argument("params: " + std::string(to_string(spec.family)) + " on " +
                                std::to_string(spec.n) + " parties takes " + std::to_string(arity) +
                                " values, got " + std::to_string(spec.params.size()));
  }
  for (double p : spec.params) {
    if (!std::isfinite(p)) throw std::invalid_argument("params: values must be finite");
  }
  switch (spec.family) {
    case GateFamily::kUsp1:
    case GateFamily::kUsp2:
    case GateFamily::kUsp3:
      if (spec.n != 3) throw std::invalid_argument("parties: the usp families act on 3 qubits");
      break;
    case GateFamily::kDiagonalOnePhase:
      if (spec.n < 2) throw std::invalid_argument("parties: diag-one-phase needs at least 2");
      break;
    case GateFamily::kTransposition: {
      const double dim = static_cast<double>(1 << spec.n);
      for (double p : spec.params) {
        if (p != std::floor(p) || p < 1 || p > dim) {
          throw std::invalid_argument("params: transposition labels must be integers in 1.." +
                                      std::to_string(1 << spec.n));
        }
      }
      if (spec.params[0] == spec.params[1]) {
        throw std::invalid_argument("params: transposition labels must differ");
      }
      break;
    }
    case GateFamily::kHaar:
      if (!spec.seed) throw std::invalid_argument("seed: required for the haar family");
      break;
    default:
      break;
  }
  if (spec.seed && spec.family != GateFamily::kHaar) {
    throw std::invalid_argument("seed: only the haar family takes a seed");
  }
}

UnitaryMatrix build_gate(const GateSpec& spec) {
  validate(spec);
  const auto& p = spec.params;
  switch (spec.family) {
    case GateFamily::kIdentity:
      return identity_gate(spec.n);
    case GateFamily::kDiagonalGeneral:
      return diag_general(p);
    case GateFamily::kDiagonalOnePhase:
      return diag_one_phase(p[0], spec.n);
    case GateFamily::kTransposition:
      return transposition(static_cast<int>(p[0]), static_cast<int>(p[1]), spec.n);
    case GateFamily::kUsp1:
      return usp1(p[0], p[1], p[2]);
    case GateFamily::kUsp2:
      return usp2(p[0], p[1], p[2], p[3]);
    case GateFamily::kUsp3:
      return usp3(p[0], p[1], p[2]);
    case GateFamily::kHaar:
      return haar_random(spec.n, *spec.seed);
    case GateFamily::kLocalProduct: {
      std::vector<UnitaryMatrix> factors;
      for (int q = 0; q < spec.n; ++q) {
        const auto i = static_cast<std::size_t>(3 * q);
        factors.push_back(single_qubit_euler(p[i], p[i + 1], p[i + 2]));
      }
      return local_product(factors).retagged(GateFamily::kLocalProduct, p);
    }
    case GateFamily::kCustom:
      break;
  }
  throw std::invalid_argument("family: custom gates cannot be built from a spec");
}

std::string to_ini(const GateSpec& spec) {
  std::string params;
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    if (i) params += ", ";
    params += format_real(spec.params[i]);
  }
  std::string out = "[gate]\nfamily = " + std::string(to_string(spec.family)) +
                    "\nparties = " + std::to_string(spec.n) + "\nparams = " + params + "\n";
  if (spec.seed) out += "seed = " + std::to_string(*spec.seed) + "\n";
  return out;
}

GateSpec make_gate_spec(std::string_view family, int n, std::string_view params,
                        std::optional<std::uint64_t> seed) {
  GateSpec spec;
  try {
    spec.family = parse_gate_family(trim(family));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("family: ") + e.what());
  }
  spec.n = n;
  try {
    spec.params = parse_real_list(params);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("params: ") + e.what());
  }
  spec.seed = seed;
  validate(spec);
  return spec;
}

GateSpec gate_spec_from_ini(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument("line " + std::to_string(e.line()) + ": " + e.message());
  }
  const auto section = tree.get_child_optional("gate");
  if (!section) throw std::invalid_argument("missing [gate] section");

  for (const auto& [key, _] : *section) {
    if (key != "family" && key != "parties" && key != "params" && key != "seed") {
      throw std::invalid_argument("[gate] " + key + ": unknown key");
    }
  }
  const auto family = section->get_optional<std::string>("family");
  if (!family) throw std::invalid_argument("[gate] family: missing");
  const auto n = section->get_optional<int>("parties");
  if (!n) throw std::invalid_argument("[gate] parties: missing or not an integer");
  std::optional<std::uint64_t> seed;
  if (section->count("seed")) {
    const auto s = section->get_optional<std::uint64_t>("seed");
    if (!s) throw std::invalid_argument("[gate] seed: not an unsigned integer");
    seed = *s;
  }
  try {
    return make_gate_spec(*family, *n, section->get<std::string>("params", ""), seed);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("[gate] ") + e.what());
  }
}

}  // namespace gmepower
