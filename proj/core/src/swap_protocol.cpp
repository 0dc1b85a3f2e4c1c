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

#include "swapsim/swap_protocol.hpp"

#include <cmath>
#include <numbers>

#include "swapsim/errors.hpp"

namespace swapsim {

namespace {

constexpr double kMinOutcomeWeight = 1e-15;

void check_transmittivity(double t, const char* name) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw ValidationError(std::string(name) + " must lie in [0, 1], got " + std::to_string(t));
    }
}

double sq(double x) { return x * x; }

}  // namespace

InputPair InputPair::maximally_entangled() {
    const double h = std::numbers::sqrt2 / 2.0;
    return InputPair{h, h, h, h};
}

InputPair InputPair::from_ratios(double xi_a, double xi_b) {
    const double na = std::sqrt(1.0 + xi_a * xi_a);
    const double nb = std::sqrt(1.0 + xi_b * xi_b);
    return InputPair{1.0 / na, xi_a / na, 1.0 / nb, xi_b / nb};
}

void InputPair::validate() const {
    const double na = std::norm(alpha) + std::norm(beta);
    const double nb = std::norm(gamma) + std::norm(delta);
    if (std::abs(na - 1.0) > tolerance::kNorm || std::abs(nb - 1.0) > tolerance::kNorm) {
        throw ValidationError("input pair is not normalized: |alpha|^2+|beta|^2 = " +
                              std::to_string(na) + ", |gamma|^2+|delta|^2 = " + std::to_string(nb));
    }
}

BsmSetting BsmSetting::entangling(double phase, Sign sign) {
    if (!(phase >= 0.0 && phase < 2.0 * std::numbers::pi)) {
        throw ValidationError("BSM phase must lie in [0, 2pi), got " + std::to_string(phase));
    }
    return BsmSetting(Kind::entangling, phase, sign);
}

BsmSetting BsmSetting::y(Sign sign) { return entangling(std::numbers::pi / 2.0, sign); }

BsmSetting BsmSetting::z(Sign which) { return BsmSetting(Kind::separable, 0.0, which); }

BsmSetting BsmSetting::parse(const std::string& name) {
    if (name.size() == 2 && (name[1] == '+' || name[1] == '-')) {
        const Sign s = name[1] == '+' ? Sign::plus : Sign::minus;
        switch (name[0]) {
            case 'X': return x(s);
            case 'Y': return y(s);
            case 'Z': return z(s);
            default: break;
        }
    }
    throw ValidationError("unknown BSM setting '" + name + "' (expected X+, X-, Y+, Y-, Z+ or Z-)");
}

PureState BsmSetting::projector() const {
    const Register labels{modes::C1, modes::C2};
    Vector v = Vector::Zero(4);
    if (kind_ == Kind::separable) {
        v(sign_ == Sign::plus ? 1 : 2) = 1.0;
    } else {
        const double h = std::numbers::sqrt2 / 2.0;
        v(1) = h;
        v(2) = sign_value(sign_) * std::polar(h, phase_);
    }
    return PureState(labels, std::move(v));
}

std::string BsmSetting::name() const {
    if (kind_ == Kind::separable) {
        return std::string("Z") + sign_char(sign_);
    }
    if (phase_ == 0.0) return std::string("X") + sign_char(sign_);
    if (phase_ == std::numbers::pi / 2.0) return std::string("Y") + sign_char(sign_);
    return "phase(" + std::to_string(phase_) + ")" + sign_char(sign_);
}

double heralded_phase(const BsmSetting& setting) {
    const double phase = setting.phase();
    return phase == 0.0 ? 0.0 : 2.0 * std::numbers::pi - phase;
}

PureState build_inputs(const InputPair& pair) {
    pair.validate();
    Vector alice(4);
    alice << pair.alpha, 0.0, 0.0, pair.beta;
    Vector bob(4);
    bob << pair.gamma, 0.0, 0.0, pair.delta;
    return tensor(PureState(Register{modes::A, modes::C1}, std::move(alice)),
                  PureState(Register{modes::C2, modes::B}, std::move(bob)));
}

namespace {

const Register& abcd_register() {
    static const Register labels{modes::A, modes::C1, modes::C2, modes::B};
    return labels;
}

void check_abcd(const Register& labels) {
    if (!(labels == abcd_register())) {
        throw LabelError("expected register (A, C1, C2, B), got " + labels.to_string());
    }
}

}  // namespace

DensityMatrix propagate(const PureState& psi, const LossChannel& ch1, const LossChannel& ch2) {
    check_abcd(psi.labels());
    const PureState dilated =
        dilate(dilate(psi, modes::C1, modes::E1, ch1), modes::C2, modes::E2, ch2);
    return partial_trace(DensityMatrix::from_pure(dilated), {modes::E1, modes::E2});
}

DensityMatrix propagate_kraus(const PureState& psi, const LossChannel& ch1, const LossChannel& ch2) {
    check_abcd(psi.labels());
    return apply_loss(apply_loss(DensityMatrix::from_pure(psi), modes::C1, ch1), modes::C2, ch2);
}

SwapOutcome bsm(const DensityMatrix& rho_abc, const BsmSetting& setting) {
    check_abcd(rho_abc.labels());
    if (std::abs(rho_abc.weight() - 1.0) > tolerance::kTrace) {
        throw ValidationError("bsm expects a unit-trace input state, got trace " +
                              std::to_string(rho_abc.weight()));
    }
    const DensityMatrix projected = project(rho_abc, setting.projector());
    const double p = projected.weight();
    if (p < kMinOutcomeWeight) {
        throw ImpossibleOutcomeError("BSM outcome " + setting.name() + " has probability " +
                                     std::to_string(p));
    }
    return SwapOutcome{projected.normalized(), p, setting};
}

SwapOutcome simulate_swap(const InputPair& pair, double t1, double t2, const BsmSetting& setting) {
    return bsm(propagate(build_inputs(pair), LossChannel(t1), LossChannel(t2)), setting);
}

double success_probability(const InputPair& pair, double t1, double t2) {
    pair.validate();
    check_transmittivity(t1, "t1");
    check_transmittivity(t2, "t2");
    const double t1s = sq(t1);
    const double t2s = sq(t2);
    const double rho44 =
        std::norm(pair.beta * pair.delta) * (t1s * (1.0 - t2s) + t2s * (1.0 - t1s));
    return std::norm(pair.alpha * pair.delta) * t2s + std::norm(pair.beta * pair.gamma) * t1s + rho44;
}

ClosedFormState closed_form_rho(const InputPair& pair, double t1, double t2, Sign sign) {
    const double norm = success_probability(pair, t1, t2);
    if (norm < kMinOutcomeWeight) {
        throw DegenerateInputError("closed form normalization vanishes (N = " +
                                   std::to_string(norm) + ")");
    }
    const double t1s = sq(t1);
    const double t2s = sq(t2);
    const Complex coherence = sign_value(sign) * pair.alpha * std::conj(pair.beta) *
                              std::conj(pair.gamma) * pair.delta * t1 * t2;

    ClosedFormState out{Eigen::Matrix4cd::Zero(), norm};
    out.rho(1, 1) = std::norm(pair.alpha * pair.delta) * t2s;
    out.rho(2, 2) = std::norm(pair.beta * pair.gamma) * t1s;
    out.rho(1, 2) = coherence;
    out.rho(2, 1) = std::conj(coherence);
    out.rho(3, 3) = std::norm(pair.beta * pair.delta) * (t1s * (1.0 - t2s) + t2s * (1.0 - t1s));
    out.rho /= norm;
    return out;
}

InputPair optimal_inputs(double t1, double t2, double epsilon) {
    if (t1 == 0.0 && t2 == 0.0) {
        throw DegenerateInputError("optimal_inputs: both channels are fully lossy");
    }
    if (!(t1 > 0.0 && t1 <= 1.0) || !(t2 > 0.0 && t2 <= 1.0)) {
        throw ValidationError("optimal_inputs: t1 and t2 must lie in (0, 1]");
    }
    if (!(epsilon > 0.0 && epsilon <= 0.5)) {
        throw ValidationError("optimal_inputs: epsilon must lie in (0, 0.5], got " +
                              std::to_string(epsilon));
    }
    // Solve b = beta^2, d = delta^2 from b*d = P^2 and b(1-d) / ((1-b) d) = k^2.
    const double p = sq(epsilon) * 2.0 * t1 * t2 / (sq(t1) + sq(t2));
    const double k2 = sq(t2 / t1);
    const double p2 = sq(p);
    const double lin = p2 * (1.0 - k2);
    const double b = 0.5 * (lin + std::sqrt(sq(lin) + 4.0 * k2 * p2));
    const double d = p2 / b;
    if (b > 0.5 || d > 0.5) {
        throw EpsilonTooLargeError("optimal_inputs: epsilon " + std::to_string(epsilon) +
                                   " drives a photon amplitude above 1/sqrt(2)");
    }
    return InputPair{std::sqrt(1.0 - b), std::sqrt(b), std::sqrt(1.0 - d), std::sqrt(d)};
}

AsymptoticState asymptotic_state(const InputPair& pair, double t1, double t2, Sign sign) {
    pair.validate();
    check_transmittivity(t1, "t1");
    check_transmittivity(t2, "t2");
    Vector v = Vector::Zero(4);
    v(1) = pair.alpha * pair.delta * t2;
    v(2) = sign_value(sign) * pair.beta * pair.gamma * t1;
    PureState ket(Register{modes::A, modes::B}, std::move(v));
    const double w = ket.weight();
    return AsymptoticState{std::move(ket), w};
}

}  // namespace swapsim
