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

#include "swapsim/entanglement_metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "swapsim/errors.hpp"

namespace swapsim {

namespace {

constexpr double kNormFloor = 1e-15;
// Eigenvalues of a unit-trace state below this are treated as exact zeros.
constexpr double kSupportFloor = 1e-14;

void check_two_qubit(const DensityMatrix& rho, const char* what) {
    if (rho.labels().size() != 2) {
        throw ValidationError(std::string(what) + " expects a two-qubit state, got register " +
                              rho.labels().to_string());
    }
}

void check_normalized(const DensityMatrix& rho, const char* what) {
    if (std::abs(rho.entries().trace() - Complex{1.0, 0.0}) > tolerance::kTrace) {
        throw ValidationError(std::string(what) + " expects a normalized state");
    }
}

double wrap_angle(double x) {
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(x, two_pi);
    if (w < 0.0) w += two_pi;
    return w;
}

// Golden-section maximization of a unimodal function on [lo, hi].
double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double concurrence_wootters(const DensityMatrix& rho) {
    check_two_qubit(rho, "concurrence_wootters");
    check_normalized(rho, "concurrence_wootters");
    const ValidationReport report = validate(rho);
    if (!report.ok()) {
        throw ValidationError("concurrence_wootters: invalid density matrix: " + report.summary());
    }

    // The lambdas are the singular values of tau_ij = <psi_i| Y x Y |psi_j*>,
    // with psi_i = sqrt(mu_i) v_i over the support of rho. Working on the
    // support keeps round-off eigenvalues of rho out of the square roots.
    const Matrix m = 0.5 * (rho.entries() + rho.entries().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < 4; ++i) {
        if (eig.eigenvalues()(i) > kSupportFloor) support.push_back(i);
    }
    if (support.empty()) {
        throw ValidationError("concurrence_wootters: state has no support");
    }
    Matrix psi(4, static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k) {
        psi.col(static_cast<Eigen::Index>(k)) =
            std::sqrt(eig.eigenvalues()(support[k])) * eig.eigenvectors().col(support[k]);
    }

    // Y x Y is real: it maps |00>,|01>,|10>,|11> to -|11>, |10>, |01>, -|00>.
    Matrix yy = Matrix::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix tau = psi.adjoint() * yy * psi.conjugate();

    Eigen::JacobiSVD<Matrix> svd(tau);
    std::array<double, 4> lambdas{};  // zero-padded beyond the support rank
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        lambdas[static_cast<std::size_t>(i)] = svd.singularValues()(i);
    }
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    const double c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    return std::clamp(c, 0.0, 1.0);
}

double concurrence_closed_form(const InputPair& pair, double t1, double t2) {
    const double norm = success_probability(pair, t1, t2);
    if (norm < kNormFloor) {
        throw DegenerateInputError("concurrence_closed_form: normalization vanishes");
    }
    const double ad = std::abs(pair.alpha * pair.delta) * t2;
    const double bg = std::abs(pair.beta * pair.gamma) * t1;
    const double bd = std::abs(pair.beta * pair.delta);
    const double mixed = bd * bd * (t1 * t1 * (1.0 - t2 * t2) + t2 * t2 * (1.0 - t1 * t1));
    return 2.0 * ad * bg / (ad * ad + bg * bg + mixed);
}

double balanced_input_concurrence(double t1, double t2) {
    return concurrence_closed_form(InputPair::maximally_entangled(), t1, t2);
}

OptimalT2 optimal_t2(double t1) {
    if (!(t1 > 0.0 && t1 <= 1.0)) {
        throw ValidationError("optimal_t2: t1 must lie in (0, 1], got " + std::to_string(t1));
    }
    if (t1 >= std::numbers::sqrt2 / 2.0) {
        return OptimalT2{1.0, true};
    }
    const auto objective = [t1](double t2) { return balanced_input_concurrence(t1, t2); };
    double best = golden_section_max(objective, 1e-9, 1.0, 1e-10);
    double best_value = objective(best);

    // Grid fallback: a grid point beating the search means it missed the
    // global maximum; restart the search around that point.
    constexpr int kGrid = 10000;
    double grid_best = 1.0;
    double grid_value = objective(1.0);
    for (int i = 1; i < kGrid; ++i) {
        const double t2 = static_cast<double>(i) / kGrid;
        const double v = objective(t2);
        if (v > grid_value) {
            grid_value = v;
            grid_best = t2;
        }
    }
    if (grid_value > best_value + 1e-12) {
        const double lo = std::max(1e-9, grid_best - 1.0 / kGrid);
        const double hi = std::min(1.0, grid_best + 1.0 / kGrid);
        best = golden_section_max(objective, lo, hi, 1e-10);
        best_value = objective(best);
    }
    return OptimalT2{best, false};
}

double bell_fidelity(const DensityMatrix& rho, Sign sign, double phase) {
    check_two_qubit(rho, "bell_fidelity");
    check_normalized(rho, "bell_fidelity");
    Vector psi = Vector::Zero(4);
    const double h = std::numbers::sqrt2 / 2.0;
    psi(1) = h;
    psi(2) = sign_value(sign) * std::polar(h, phase);
    const Complex f = psi.dot(rho.entries() * psi);  // dot conjugates its left side
    return std::clamp(f.real(), 0.0, 1.0);
}

FringeScan fringe_scan(const DensityMatrix& rho, std::span<const double> thetas,
                       const BsmSetting& setting) {
    check_two_qubit(rho, "fringe_scan");
    check_normalized(rho, "fringe_scan");
    if (thetas.empty()) {
        throw ValidationError("fringe_scan: empty theta grid");
    }
    const Matrix& m = rho.entries();
    const double populations = 0.5 * (m(1, 1).real() + m(2, 2).real());
    const Complex coherence = m(1, 2);

    FringeScan scan;
    scan.setting = setting;
    scan.thetas.assign(thetas.begin(), thetas.end());
    scan.p_plus.reserve(thetas.size());
    scan.p_minus.reserve(thetas.size());
    for (double theta : thetas) {
        const double interference = (std::polar(1.0, theta) * coherence).real();
        scan.p_plus.push_back(std::clamp(populations + interference, 0.0, 1.0));
        scan.p_minus.push_back(std::clamp(populations - interference, 0.0, 1.0));
    }
    return scan;
}

FringeScan fringe_scan(const SwapOutcome& outcome, std::span<const double> thetas) {
    return fringe_scan(outcome.rho_ab, thetas, outcome.setting);
}

VisibilityReport visibility(const DensityMatrix& rho) {
    check_two_qubit(rho, "visibility");
    const Matrix& m = rho.entries();
    const double populations = m(1, 1).real() + m(2, 2).real();
    if (populations < kNormFloor) {
        throw NoSignalError("visibility: no population in the one-photon subspace");
    }
    const Complex coherence = m(1, 2);
    VisibilityReport r;
    r.v = 2.0 * std::abs(coherence) / populations;
    // p_plus peaks where e^{i theta} rho_{01,10} is real and positive.
    r.theta_max = wrap_angle(-std::arg(coherence));
    r.theta_min = wrap_angle(r.theta_max + std::numbers::pi);
    r.method = VisibilityReport::Method::analytic;
    return r;
}

VisibilityReport visibility(const FringeScan& scan) {
    if (scan.p_plus.empty()) {
        throw ValidationError("visibility: empty fringe scan");
    }
    const auto [lo, hi] = std::minmax_element(scan.p_plus.begin(), scan.p_plus.end());
    const double sum = *hi + *lo;
    if (sum < kNormFloor) {
        throw NoSignalError("visibility: fringe carries no signal");
    }
    VisibilityReport r;
    r.v = (*hi - *lo) / sum;
    r.theta_max = scan.thetas[static_cast<std::size_t>(hi - scan.p_plus.begin())];
    r.theta_min = scan.thetas[static_cast<std::size_t>(lo - scan.p_plus.begin())];
    r.method = VisibilityReport::Method::fit;
    return r;
}

std::vector<double> theta_grid(std::size_t n) {
    std::vector<double> grid(n);
    for (std::size_t k = 0; k < n; ++k) {
        grid[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    }
    return grid;
}

}  // namespace swapsim
