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

// Idealized model of a two-source SPDC swapping experiment: weak SPDC
// sources truncated at one pair, a pump split between them, and Poisson
// coincidence counts for the phase-scanned verification measurement.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "swapsim/entanglement_metrics.hpp"
#include "swapsim/swap_protocol.hpp"

namespace swapsim {

/// Source producing |00> + xi |11> (then normalized).
class SpdcSource {
public:
    /// Throws ValidationError when |xi| > 0.5.
    explicit SpdcSource(Complex xi);

    Complex xi() const noexcept { return xi_; }

private:
    Complex xi_;
};

/// (alpha, beta) = (1, xi_a)/sqrt(1+|xi_a|^2), likewise (gamma, delta) for b.
InputPair spdc_input(const SpdcSource& a, const SpdcSource& b);

/// Splits the pump so that xi_a = sqrt(ratio) xi_total and
/// xi_b = sqrt(1 - ratio) xi_total.
std::pair<SpdcSource, SpdcSource> pump_split(double ratio, double xi_total);

/// Pump ratio giving xi_b / xi_a = q.
double pump_ratio_for_xi_ratio(double q);

/// Pump ratio whose sources satisfy |alpha delta t2| = |beta gamma t1|, i.e.
/// xi_b / xi_a = t1 / t2.
double balancing_pump_ratio(double t1, double t2);

struct CountModel {
    double mean_total_counts = 1e5;  ///< expected counts per theta for unit probability
    std::uint64_t seed = 0;
};

struct FringeCounts {
    BsmSetting setting = BsmSetting::x(Sign::plus);
    std::vector<double> thetas;
    std::vector<double> expected_plus;
    std::vector<double> expected_minus;
    std::vector<std::int64_t> plus;
    std::vector<std::int64_t> minus;
};

/// Poisson-sampled verification counts for the swapped state. Bit-exact for
/// a given seed and standard library.
FringeCounts synth_counts(const InputPair& pair, double t1, double t2, const BsmSetting& setting,
                          std::span<const double> thetas, const CountModel& model);

/// Counts drawn around precomputed expectations; used by synth_counts.
std::vector<std::int64_t> sample_poisson(std::span<const double> expected, std::uint64_t seed,
                                          std::uint64_t stream);

struct VisibilityEstimate {
    VisibilityReport report;
    double sigma = 0.0;      ///< 1-sigma uncertainty on report.v
    double offset = 0.0;     ///< a in a + b cos(theta + c)
    double amplitude = 0.0;  ///< |b|
    double phase = 0.0;      ///< c
};

/// Weighted least-squares fit of a + b cos(theta + c) under Poisson
/// variances; V = |b| / a. Needs at least 8 angles with no circular gap
/// wider than pi/2.
VisibilityEstimate estimate_visibility(std::span<const double> thetas,
                                       std::span<const std::int64_t> counts);

/// Success probability relative to lossless channels with the same inputs.
double normalized_success(const InputPair& pair, double t1, double t2);

/// CSV with columns theta_rad,outcome_sign,counts.
void write_counts_csv(std::ostream& os, const FringeCounts& counts);

}  // namespace swapsim
