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

#include <span>
#include <vector>

#include "swapsim/quantum_core.hpp"
#include "swapsim/swap_protocol.hpp"

namespace swapsim {

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), with l_i the decreasing
/// square roots of the eigenvalues of rho (Y x Y) rho* (Y x Y).
/// The input must be a valid normalized two-qubit state.
double concurrence_wootters(const DensityMatrix& rho);

/// 2 |alpha beta gamma delta t1 t2| / N for the swapped state.
double concurrence_closed_form(const InputPair& pair, double t1, double t2);

/// Concurrence with maximally entangled inputs.
double balanced_input_concurrence(double t1, double t2);

struct OptimalT2 {
    double t2 = 1.0;
    /// True when t1 >= 1/sqrt(2) and the maximum sits on the t2 = 1 edge.
    bool boundary = false;
};

/// Maximizes balanced_input_concurrence(t1, .) over t2 in (0, 1] with a
/// golden-section search, refined against a 1e-4 grid.
OptimalT2 optimal_t2(double t1);

/// <Psi|rho|Psi> for |Psi> = (|01> + s e^{i phase}|10>)/sqrt(2).
double bell_fidelity(const DensityMatrix& rho, Sign sign, double phase);

/// Verification probabilities for Alice and Bob's joint projection onto
/// (|01> +- e^{i theta}|10>)/sqrt(2).
struct FringeScan {
    BsmSetting setting = BsmSetting::x(Sign::plus);
    std::vector<double> thetas;
    std::vector<double> p_plus;
    std::vector<double> p_minus;
};

FringeScan fringe_scan(const DensityMatrix& rho, std::span<const double> thetas,
                       const BsmSetting& setting = BsmSetting::x(Sign::plus));
FringeScan fringe_scan(const SwapOutcome& outcome, std::span<const double> thetas);

struct VisibilityReport {
    enum class Method { analytic, fit };

    double v = 0.0;
    double theta_max = 0.0;
    double theta_min = 0.0;
    Method method = Method::analytic;
};

/// Closed form 2|rho_{01,10}| / (rho_{01,01} + rho_{10,10}).
VisibilityReport visibility(const DensityMatrix& rho);

/// (max - min) / (max + min) over the sampled p_plus fringe.
VisibilityReport visibility(const FringeScan& scan);

/// Evenly spaced grid k * 2pi / n for k = 0..n-1.
std::vector<double> theta_grid(std::size_t n);

}  // namespace swapsim
