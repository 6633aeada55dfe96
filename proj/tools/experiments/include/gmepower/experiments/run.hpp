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

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gmepower/experiments/config.hpp"

namespace gmepower::experiments {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitNumericalFailure = 3,
  kExitVerificationFailed = 4,
};

/// Executes one command. Result files go to `<output>.csv` / `<output>.json`
/// (plus `<output>.hist.csv` for ensembles) when config.output is set; the
/// one-line summary goes to `out`, diagnostics to `err`. Never throws.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

struct Recipe {
  std::string_view name;
  std::string_view description;
};

/// The fixed registry, in listing order.
const std::vector<Recipe>& recipes();

/// Prints one "name  description" line per recipe.
void list_recipes(std::ostream& out);

/// Runs a named recipe. `customize` is applied to every config the recipe
/// builds, after the recipe's own defaults, so command-line flags win.
int run_recipe(std::string_view name, const std::function<void(ExperimentConfig&)>& customize,
               std::ostream& out, std::ostream& err);

/// Default configuration of a recipe that maps onto a single command;
/// throws std::invalid_argument for unknown names or check-style recipes.
ExperimentConfig recipe_config(std::string_view name);

}  // namespace gmepower::experiments
