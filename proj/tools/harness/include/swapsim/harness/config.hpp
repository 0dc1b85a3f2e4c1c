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

// Plain-text sweep configuration.
//
// One `key = value` pair per line; `#` starts a comment. Grid values are a
// comma-separated list of numbers, `linspace(start, stop, n)`,
// `logspace(start, stop, n)` (geometric, endpoints inclusive) or
// `circle(n)` (k * 2pi / n for k = 0..n-1). Keys that are not given take the
// defaults of the selected experiment.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swapsim/errors.hpp"

namespace swapsim::harness {

enum class Experiment {
    concurrence_surface,
    concurrence_slices,
    theta_fringes,
    scaling_balanced,
    imbalance_restore,
    oracle_check,
};

std::string_view experiment_name(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);
const std::vector<Experiment>& all_experiments();

struct SweepConfig {
    Experiment experiment = Experiment::oracle_check;
    std::vector<double> t1;       ///< amplitude transmittivity, Alice-Charlie
    std::vector<double> t2;       ///< amplitude transmittivity, Bob-Charlie
    std::vector<double> t;        ///< total amplitude transmittivity t1 * t2 (balanced recipes)
    std::vector<double> theta;    ///< verification phase, radians
    std::vector<double> epsilon;  ///< photon-pair scale of the optimal inputs
    std::vector<double> xi;       ///< per-source SPDC amplitude
    std::vector<double> ratio;    ///< pump power fraction sent to Alice's source
    std::vector<std::string> settings;  ///< Charlie's measurement settings
    std::uint64_t seed = 0;
    std::string output = ".";
    /// Report success probabilities relative to lossless channels.
    bool normalize = false;
    std::uint64_t draws = 1000;
    double mean_counts = 1e5;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Usage error carrying every violation found in a configuration.
class ConfigError : public ValidationError {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Parses and validates a configuration document; throws ConfigError.
SweepConfig validate_config(std::string_view raw);

/// Defaults for `e` with every grid populated.
SweepConfig default_config(Experiment e);

/// Re-checks domains after command-line overrides; throws ConfigError.
void check_config(const SweepConfig& config);

/// Canonical text form; validate_config(to_text(c)) == c.
std::string to_text(const SweepConfig& config);

}  // namespace swapsim::harness
