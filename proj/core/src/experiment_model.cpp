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

#include "swapsim/experiment_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "swapsim/errors.hpp"
#include "swapsim/format.hpp"

namespace swapsim {

namespace {

constexpr double kMaxXi = 0.5;
constexpr std::size_t kMinFitPoints = 8;

double wrap_angle(double x) {
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(x, two_pi);
    if (w < 0.0) w += two_pi;
    return w;
}

void check_full_period(std::span<const double> thetas) {
    if (thetas.size() < kMinFitPoints) {
        throw ValidationError("estimate_visibility needs at least 8 angles, got " +
                              std::to_string(thetas.size()));
    }
    std::vector<double> w(thetas.size());
    std::transform(thetas.begin(), thetas.end(), w.begin(), wrap_angle);
    std::sort(w.begin(), w.end());
    double gap = w.front() + 2.0 * std::numbers::pi - w.back();
    for (std::size_t i = 1; i < w.size(); ++i) {
        gap = std::max(gap, w[i] - w[i - 1]);
    }
    if (gap > std::numbers::pi / 2.0 + 1e-12) {
        throw ValidationError("estimate_visibility: angles do not span a full period (gap " +
                              std::to_string(gap) + " rad)");
    }
}

}  // namespace

SpdcSource::SpdcSource(Complex xi) : xi_(xi) {
    if (!(std::abs(xi) <= kMaxXi)) {
        throw ValidationError("SPDC amplitude |xi| = " + std::to_string(std::abs(xi)) +
                              " exceeds the one-pair truncation limit 0.5");
    }
}

InputPair spdc_input(const SpdcSource& a, const SpdcSource& b) {
    const double na = std::sqrt(1.0 + std::norm(a.xi()));
    const double nb = std::sqrt(1.0 + std::norm(b.xi()));
    return InputPair{1.0 / na, a.xi() / na, 1.0 / nb, b.xi() / nb};
}

std::pair<SpdcSource, SpdcSource> pump_split(double ratio, double xi_total) {
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
        throw ValidationError("pump ratio must lie in [0, 1], got " + std::to_string(ratio));
    }
    return {SpdcSource(std::sqrt(ratio) * xi_total), SpdcSource(std::sqrt(1.0 - ratio) * xi_total)};
}

double pump_ratio_for_xi_ratio(double q) {
    if (!(q >= 0.0) || !std::isfinite(q)) {
        throw ValidationError("xi ratio must be finite and non-negative");
    }
    return 1.0 / (1.0 + q * q);
}

double balancing_pump_ratio(double t1, double t2) {
    if (!(t1 > 0.0 && t1 <= 1.0) || !(t2 > 0.0 && t2 <= 1.0)) {
        throw ValidationError("balancing_pump_ratio: t1 and t2 must lie in (0, 1]");
    }
    return t2 * t2 / (t1 * t1 + t2 * t2);
}

std::vector<std::int64_t> sample_poisson(std::span<const double> expected, std::uint64_t seed,
                                          std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    std::vector<std::int64_t> out;
    out.reserve(expected.size());
    for (double mean : expected) {
        if (!(mean > 0.0)) {
            out.push_back(0);
            continue;
        }
        std::poisson_distribution<std::int64_t> dist(mean);
        out.push_back(dist(rng));
    }
    return out;
}

FringeCounts synth_counts(const InputPair& pair, double t1, double t2, const BsmSetting& setting,
                          std::span<const double> thetas, const CountModel& model) {
    if (!(model.mean_total_counts >= 0.0) || !std::isfinite(model.mean_total_counts)) {
        throw ValidationError("mean_total_counts must be finite and non-negative");
    }
    FringeCounts out;
    out.setting = setting;
    out.thetas.assign(thetas.begin(), thetas.end());
    if (model.mean_total_counts == 0.0) {
        out.expected_plus.assign(thetas.size(), 0.0);
        out.expected_minus.assign(thetas.size(), 0.0);
        out.plus.assign(thetas.size(), 0);
        out.minus.assign(thetas.size(), 0);
        return out;
    }
    const SwapOutcome outcome = simulate_swap(pair, t1, t2, setting);
    const FringeScan scan = fringe_scan(outcome, thetas);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        out.expected_plus.push_back(model.mean_total_counts * scan.p_plus[i]);
        out.expected_minus.push_back(model.mean_total_counts * scan.p_minus[i]);
    }
    out.plus = sample_poisson(out.expected_plus, model.seed, 0);
    out.minus = sample_poisson(out.expected_minus, model.seed, 1);
    return out;
}

VisibilityEstimate estimate_visibility(std::span<const double> thetas,
                                       std::span<const std::int64_t> counts) {
    if (thetas.size() != counts.size()) {
        throw ValidationError("estimate_visibility: thetas and counts differ in length");
    }
    check_full_period(thetas);

    const auto n = static_cast<Eigen::Index>(thetas.size());
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double th = thetas[static_cast<std::size_t>(i)];
        x(i, 0) = 1.0;
        x(i, 1) = std::cos(th);
        x(i, 2) = std::sin(th);
        y(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]);
    }

    // Start from observed-count variances, then reweight with the fitted
    // model so the weights do not correlate with the noise.
    Eigen::VectorXd variance = y.cwiseMax(1.0);
    Eigen::Vector3d params = Eigen::Vector3d::Zero();
    Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
    for (int iter = 0; iter < 3; ++iter) {
        const Eigen::VectorXd w = variance.cwiseInverse();
        normal = x.transpose() * w.asDiagonal() * x;
        params = normal.ldlt().solve(x.transpose() * w.asDiagonal() * y);
        variance = (x * params).cwiseMax(1.0);
    }
    const Eigen::Matrix3d cov = normal.inverse();

    const double a = params(0);
    const double p = params(1);
    const double q = params(2);
    if (!(a > 0.0)) {
        throw FitFailureError("estimate_visibility: fitted offset is not positive");
    }
    const double b = std::hypot(p, q);

    VisibilityEstimate est;
    est.offset = a;
    est.amplitude = b;
    // p cos(theta) + q sin(theta) = b cos(theta + c) with p = b cos c, q = -b sin c.
    est.phase = std::atan2(-q, p);
    est.report.v = b / a;
    est.report.method = VisibilityReport::Method::fit;
    est.report.theta_max = wrap_angle(-est.phase);
    est.report.theta_min = wrap_angle(-est.phase + std::numbers::pi);
    if (b > 0.0) {
        const Eigen::Vector3d g(-b / (a * a), p / (a * b), q / (a * b));
        est.sigma = std::sqrt(std::max(0.0, g.dot(cov * g)));
    } else {
        est.sigma = std::sqrt(0.5 * (cov(1, 1) + cov(2, 2))) / a;
    }
    return est;
}

double normalized_success(const InputPair& pair, double t1, double t2) {
    const double baseline = success_probability(pair, 1.0, 1.0);
    if (baseline < 1e-15) {
        throw DegenerateInputError("normalized_success: lossless baseline vanishes");
    }
    return success_probability(pair, t1, t2) / baseline;
}

void write_counts_csv(std::ostream& os, const FringeCounts& counts) {
    os << "theta_rad,outcome_sign,counts\n";
    for (std::size_t i = 0; i < counts.thetas.size(); ++i) {
        os << format_double(counts.thetas[i]) << ",+," << counts.plus[i] << '\n';
    }
    for (std::size_t i = 0; i < counts.thetas.size(); ++i) {
        os << format_double(counts.thetas[i]) << ",-," << counts.minus[i] << '\n';
    }
}

}  // namespace swapsim
