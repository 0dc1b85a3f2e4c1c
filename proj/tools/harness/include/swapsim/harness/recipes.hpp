// Copyright 2026 The swapsim Authors
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

#include <string>
#include <vector>

#include "json.hpp"
#include "swapsim/harness/config.hpp"
#include "swapsim/quantum_core.hpp"

namespace swapsim::harness {

struct RecipeInfo {
    Experiment experiment;
    std::string description;
    std::vector<std::string> columns;
};

/// Column contract of a recipe; success columns depend on `normalize`.
RecipeInfo recipe_info(Experiment e, bool normalize = false);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct AuxFile {
    std::string name;
    std::string content;
};

struct DumpedState {
    nlohmann::json context;
    DensityMatrix rho;
};

struct RecipeResult {
    Table table;
    std::vector<AuxFile> aux;
    nlohmann::json summary = nlohmann::json::object();
    std::vector<DumpedState> states;
    /// Set by oracle-check when a deviation exceeds its tolerance.
    bool invariant_violation = false;
};

/// Evaluates every grid point; points run on up to `jobs` threads and rows
/// are ordered by grid index.
RecipeResult run_recipe(const SweepConfig& config, std::size_t jobs = 1);

/// CSV text with a header row, '.' decimals and LF line endings.
std::string to_csv(const Table& table);

}  // namespace swapsim::harness
