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

// Entanglement swapping with photon-number-encoded qubits.
//
// Alice holds alpha|00> + beta|11> on (A, C1) and Bob holds
// gamma|00> + delta|11> on (C2, B). The flying modes C1 and C2 cross lossy
// channels with amplitude transmittivities t1 and t2, then Charlie projects
// (C1, C2) onto a single-photon state and Alice and Bob are left with rho_AB.

#include <array>
#include <string>

#include <Eigen/Dense>

#include "swapsim/loss_channel.hpp"
#include "swapsim/quantum_core.hpp"

namespace swapsim {

enum class Sign { plus, minus };

inline double sign_value(Sign s) noexcept { return s == Sign::plus ? 1.0 : -1.0; }
inline char sign_char(Sign s) noexcept { return s == Sign::plus ? '+' : '-'; }

/// Amplitudes of the two initial entangled pairs.
struct InputPair {
    Complex alpha{1.0};
    Complex beta{0.0};
    Complex gamma{1.0};
    Complex delta{0.0};

    /// All four amplitudes equal to 1/sqrt(2).
    static InputPair maximally_entangled();
    /// Real amplitudes with beta/alpha = xi_a and delta/gamma = xi_b.
    static InputPair from_ratios(double xi_a, double xi_b);

    /// Throws ValidationError unless both pairs are normalized.
    void validate() const;
};

/// Charlie's measurement on (C1, C2).
///
/// Entangling settings project onto (|01> + s e^{i phase}|10>)/sqrt(2) with
/// s = +-1; phase 0 is the X setting and pi/2 the Y setting. Separable settings
/// project onto |01> (Z+) or |10> (Z-).
class BsmSetting {
public:
    enum class Kind { entangling, separable };

    static BsmSetting entangling(double phase, Sign sign);
    static BsmSetting x(Sign sign) { return entangling(0.0, sign); }
    static BsmSetting y(Sign sign);
    /// Z+ projects onto |01>_{C1C2}, Z- onto |10>_{C1C2}.
    static BsmSetting z(Sign which);

    /// Parses "X+", "X-", "Y+", "Y-", "Z+", "Z-".
    static BsmSetting parse(const std::string& name);

    Kind kind() const noexcept { return kind_; }
    double phase() const noexcept { return phase_; }
    Sign sign() const noexcept { return sign_; }
    bool is_entangling() const noexcept { return kind_ == Kind::entangling; }

    /// Normalized projector ket on (C1, C2).
    PureState projector() const;
    std::string name() const;

private:
    BsmSetting(Kind kind, double phase, Sign sign) : kind_(kind), phase_(phase), sign_(sign) {}

    Kind kind_;
    double phase_;
    Sign sign_;
};

/// Phase of the Bell state (|01> + s e^{i phase}|10>)/sqrt(2) heralded on
/// (A, B) by an entangling setting. Projecting with the bra conjugates the
/// setting's phase, so this is -phase wrapped into [0, 2pi).
double heralded_phase(const BsmSetting& setting);

struct SwapOutcome {
    DensityMatrix rho_ab;  ///< normalized, labels (A, B)
    double p_success;      ///< absolute probability of this outcome
    BsmSetting setting;
};

/// Initial state on (A, C1, C2, B).
PureState build_inputs(const InputPair& pair);

/// Sends C1 through `ch1` and C2 through `ch2` by dilation onto E1, E2 and
/// tracing the environment out.
DensityMatrix propagate(const PureState& psi, const LossChannel& ch1, const LossChannel& ch2);

/// Same channel action computed with Kraus operators on C1 and C2.
DensityMatrix propagate_kraus(const PureState& psi, const LossChannel& ch1, const LossChannel& ch2);

/// Post-selects Charlie's outcome. Throws ImpossibleOutcomeError if its
/// probability is below 1e-15.
SwapOutcome bsm(const DensityMatrix& rho_abc, const BsmSetting& setting);

/// Full brute-force pipeline: build_inputs, propagate, bsm.
SwapOutcome simulate_swap(const InputPair& pair, double t1, double t2, const BsmSetting& setting);

struct ClosedFormState {
    Eigen::Matrix4cd rho;  ///< normalized, basis |00>, |01>, |10>, |11> of (A, B)
    double norm;           ///< total success probability over both signs
};

/// Closed-form post-selected state for the X setting with the given sign.
ClosedFormState closed_form_rho(const InputPair& pair, double t1, double t2, Sign sign);

/// |alpha delta|^2 t2^2 + |beta gamma|^2 t1^2 + |beta delta|^2 (t1^2 r2^2 + t2^2 r1^2):
/// the probability that Charlie registers either entangling outcome.
double success_probability(const InputPair& pair, double t1, double t2);

/// Inputs balancing |alpha delta t2| = |beta gamma t1| with photon-pair scale
/// epsilon: |beta delta| = epsilon^2 * 2 t1 t2 / (t1^2 + t2^2). When t1 == t2
/// this gives beta = delta = epsilon.
InputPair optimal_inputs(double t1, double t2, double epsilon);

struct AsymptoticState {
    PureState ket;  ///< alpha delta t2 |01> +- beta gamma t1 |10> on (A, B)
    double squared_norm;
};

/// Weak-pair limit of the swapped state, dropping the |11> population.
AsymptoticState asymptotic_state(const InputPair& pair, double t1, double t2, Sign sign);

}  // namespace swapsim
