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

#include <numbers>
#include <string>

#include "gtest/gtest.h"

#include "gmepower/gates.hpp"

using namespace gmepower;
using std::numbers::pi;

namespace {

std::string error_of(const std::string& ini) {
  try {
    gate_spec_from_ini(ini);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(parse_real, pi_forms) {
  EXPECT_DOUBLE_EQ(parse_real("pi"), pi);
  EXPECT_DOUBLE_EQ(parse_real("-pi"), -pi);
  EXPECT_DOUBLE_EQ(parse_real("3pi/4"), 3 * pi / 4);
  EXPECT_DOUBLE_EQ(parse_real("11*pi/40"), 11 * pi / 40);
  EXPECT_DOUBLE_EQ(parse_real(" 0.25 "), 0.25);
  EXPECT_DOUBLE_EQ(parse_real("1e-3"), 1e-3);
  EXPECT_THROW(parse_real("pie"), std::invalid_argument);
  EXPECT_THROW(parse_real("pi/0"), std::invalid_argument);
  EXPECT_THROW(parse_real(""), std::invalid_argument);
  EXPECT_EQ(parse_real_list("pi/4, 0.1,0.1").size(), 3U);
  EXPECT_TRUE(parse_real_list("").empty());
}

TEST(gate_spec, ini_round_trip) {
  const std::vector<GateSpec> specs = {
      {GateFamily::kIdentity, 4, {}, std::nullopt},
      {GateFamily::kDiagonalOnePhase, 3, {pi / 3}, std::nullopt},
      {GateFamily::kDiagonalGeneral, 2, {0.1, 0.2, 0.3, 1.0 / 3}, std::nullopt},
      {GateFamily::kTransposition, 3, {1, 4}, std::nullopt},
      {GateFamily::kUsp1, 3, {pi / 4, 11 * pi / 40, pi / 40}, std::nullopt},
      {GateFamily::kUsp2, 3, {0.1, 0.2, 0.3, 0.4}, std::nullopt},
      {GateFamily::kUsp3, 3, {pi / 4, 0.1, 0.1}, std::nullopt},
      {GateFamily::kHaar, 3, {}, 123456789012345ULL},
      {GateFamily::kLocalProduct, 2, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, std::nullopt},
  };
  for (const auto& s : specs) {
    const auto back = gate_spec_from_ini(to_ini(s));
    EXPECT_EQ(back, s) << to_ini(s);
    EXPECT_EQ(build_gate(back).entries(), build_gate(s).entries());
  }
}

TEST(gate_spec, builds_expected_gates) {
  EXPECT_EQ(build_gate({GateFamily::kUsp3, 3, {0.3, 0.2, 0.1}, std::nullopt}).entries(), usp3(0.3, 0.2, 0.1).entries());
  EXPECT_EQ(build_gate({GateFamily::kHaar, 3, {}, 9}).entries(), haar_random(3, 9).entries());
  EXPECT_EQ(family_arity(GateFamily::kDiagonalGeneral, 3), 8);
  EXPECT_EQ(family_arity(GateFamily::kLocalProduct, 4), 12);
}

TEST(gate_spec, validation_names_field) {
  EXPECT_THROW(validate({GateFamily::kUsp1, 4, {0, 0, 0}, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(validate({GateFamily::kHaar, 3, {}, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(validate({GateFamily::kTransposition, 3, {2, 2}, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(validate({GateFamily::kCustom, 3, {}, std::nullopt}), std::invalid_argument);
  EXPECT_NE(error_of("[gate]\nfamily = usp1\nparties = 3\nparams = 1, 2\n").find("params"), std::string::npos);
  EXPECT_NE(error_of("[gate]\nfamily = usp1\nparties = 3\ncolour = red\n").find("colour"), std::string::npos);
  EXPECT_NE(error_of("[gate]\nfamily = nope\nparties = 3\n").find("family"), std::string::npos);
  EXPECT_NE(error_of("[gate]\nfamily usp1\n").find("line 2"), std::string::npos);
}
