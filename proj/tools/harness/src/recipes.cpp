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

#include "swapsim/harness/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "swapsim/entanglement_metrics.hpp"
#include "swapsim/experiment_model.hpp"
#include "swapsim/format.hpp"
#include "swapsim/harness/parallel.hpp"
#include "swapsim/swap_protocol.hpp"

namespace swapsim::harness {

namespace {

using nlohmann::json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kOracleTolerance = 1e-12;
constexpr double kConcurrenceTolerance = 1e-10;

struct PointResult {
    std::vector<std::vector<std::string>> rows;
    std::vector<AuxFile> aux;
    std::vector<DumpedState> states;
    json extra = json::object();
    bool violation = false;
};

std::string num(double x) { return format_double(x); }

DensityMatrix ab_state(const Eigen::Matrix4cd& rho) {
    return DensityMatrix(Register{modes::A, modes::B}, Matrix(rho));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::string file_token(const std::string& setting) {
    std::string out;
    for (char c : setting) {
        if (c == '+') out += "plus";
        else if (c == '-') out += "minus";
        else out += c;
    }
    return out;
}

std::string zero_pad(std::size_t i, int width) {
    std::string s = std::to_string(i);
    return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(s.size()))), '0') + s;
}

std::string success_column(bool normalize) { return normalize ? "normalized_success" : "p_success"; }

// Balanced pump: each source gets amplitude xi.
InputPair balanced_spdc(double xi) {
    const auto [a, b] = pump_split(0.5, xi * std::numbers::sqrt2);
    return spdc_input(a, b);
}

InputPair equal_inputs(double epsilon) {
    const double alpha = std::sqrt(1.0 - epsilon * epsilon);
    return InputPair{alpha, epsilon, alpha, epsilon};
}

// Closed-form metrics for the X+ outcome; entries are nan when no photon
// reaches Charlie.
struct PointMetrics {
    double concurrence = kNan;
    double visibility = kNan;
    double fidelity = kNan;
    double success = 0.0;
    std::optional<DensityMatrix> rho;
};

PointMetrics closed_form_metrics(const InputPair& pair, double t1, double t2, bool normalize) {
    PointMetrics m;
    m.success = normalize ? normalized_success(pair, t1, t2) : success_probability(pair, t1, t2);
    try {
        const auto cf = closed_form_rho(pair, t1, t2, Sign::plus);
        DensityMatrix rho = ab_state(cf.rho);
        m.concurrence = concurrence_closed_form(pair, t1, t2);
        m.visibility = visibility(rho).v;
        m.fidelity = bell_fidelity(rho, Sign::plus, 0.0);
        m.rho = std::move(rho);
    } catch (const DegenerateInputError&) {
    } catch (const NoSignalError&) {
    }
    return m;
}

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

Complex gaussian_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

InputPair random_pair(std::mt19937_64& rng) {
    InputPair p{gaussian_complex(rng), gaussian_complex(rng), gaussian_complex(rng), gaussian_complex(rng)};
    const double n1 = std::sqrt(std::norm(p.alpha) + std::norm(p.beta));
    const double n2 = std::sqrt(std::norm(p.gamma) + std::norm(p.delta));
    p.alpha /= n1;
    p.beta /= n1;
    p.gamma /= n2;
    p.delta /= n2;
    return p;
}

template <class F>
RecipeResult collect(std::size_t n, std::size_t jobs, std::vector<std::string> columns, F&& point) {
    auto points = parallel_map(n, jobs, std::forward<F>(point));
    RecipeResult result;
    result.table.columns = std::move(columns);
    for (auto& p : points) {
        for (auto& row : p.rows) result.table.rows.push_back(std::move(row));
        for (auto& a : p.aux) result.aux.push_back(std::move(a));
        for (auto& s : p.states) result.states.push_back(std::move(s));
        result.invariant_violation = result.invariant_violation || p.violation;
    }
    return result;
}

RecipeResult run_surface(const SweepConfig& c, std::size_t jobs) {
    const InputPair pair = InputPair::maximally_entangled();
    const std::size_t n2 = c.t2.size();
    return collect(c.t1.size() * n2, jobs, recipe_info(c.experiment, c.normalize).columns,
                   [&](std::size_t i) {
                       PointResult out;
                       const double t1 = c.t1[i / n2];
                       const double t2 = c.t2[i % n2];
                       auto m = closed_form_metrics(pair, t1, t2, c.normalize);
                       out.rows.push_back({num(t1), num(t2), num(m.concurrence), num(m.visibility), num(m.success)});
                       if (m.rho) out.states.push_back({json{{"t1", t1}, {"t2", t2}, {"setting", "X+"}}, *m.rho});
                       return out;
                   });
}

RecipeResult run_slices(const SweepConfig& c, std::size_t jobs) {
    RecipeResult result = run_surface(c, jobs);
    json optima = json::array();
    for (double t1 : c.t1) {
        if (t1 <= 0.0) continue;
        const OptimalT2 opt = optimal_t2(t1);
        optima.push_back({{"t1", t1},
                          {"optimal_t2", opt.t2},
                          {"boundary", opt.boundary},
                          {"max_concurrence", balanced_input_concurrence(t1, opt.t2)}});
    }
    result.summary["optima"] = optima;
    return result;
}

RecipeResult run_fringes(const SweepConfig& c, std::size_t jobs) {
    struct Point {
        double xi, ratio, t1, t2;
    };
    std::vector<Point> points;
    for (double xi : c.xi)
        for (double r : c.ratio)
            for (double t1 : c.t1)
                for (double t2 : c.t2) points.push_back({xi, r, t1, t2});
    std::vector<BsmSetting> settings;
    for (const auto& s : c.settings) settings.push_back(BsmSetting::parse(s));
    const std::size_t ns = settings.size();
    const int width = points.size() > 1000 ? 6 : 3;

    RecipeResult result = collect(points.size() * ns, jobs, recipe_info(c.experiment, c.normalize).columns,
                                  [&](std::size_t i) {
        PointResult out;
        const std::size_t pi = i / ns;
        const std::size_t si = i % ns;
        const Point& p = points[pi];
        const BsmSetting& setting = settings[si];
        const auto [src_a, src_b] = pump_split(p.ratio, p.xi * std::numbers::sqrt2);
        const InputPair pair = spdc_input(src_a, src_b);
        const std::uint64_t seed = derive_seed(c.seed, pi, si);

        double success = 0.0, v_analytic = kNan, v_fit = kNan, sigma = kNan, fidelity = kNan, conc = kNan;
        try {
            const SwapOutcome outcome = simulate_swap(pair, p.t1, p.t2, setting);
            success = outcome.p_success;
            if (c.normalize) success /= simulate_swap(pair, 1.0, 1.0, setting).p_success;
            try {
                v_analytic = visibility(outcome.rho_ab).v;
            } catch (const NoSignalError&) {
            }
            if (setting.is_entangling()) {
                fidelity = bell_fidelity(outcome.rho_ab, setting.sign(), heralded_phase(setting));
            }
            conc = concurrence_wootters(outcome.rho_ab);
            const FringeCounts counts =
                synth_counts(pair, p.t1, p.t2, setting, c.theta, CountModel{c.mean_counts, seed});
            try {
                const VisibilityEstimate est = estimate_visibility(counts.thetas, counts.plus);
                v_fit = est.report.v;
                sigma = est.sigma;
            } catch (const FitFailureError&) {
            }
            std::ostringstream csv;
            write_counts_csv(csv, counts);
            out.aux.push_back({"theta-fringes_p" + zero_pad(pi, width) + "_" + file_token(setting.name()) + ".csv",
                               csv.str()});
            out.states.push_back({json{{"point", pi},
                                       {"xi", p.xi},
                                       {"ratio", p.ratio},
                                       {"t1", p.t1},
                                       {"t2", p.t2},
                                       {"setting", setting.name()},
                                       {"seed", seed}},
                                  outcome.rho_ab});
        } catch (const ImpossibleOutcomeError&) {
        }
        out.rows.push_back({std::to_string(pi), num(p.xi), num(p.ratio), num(p.t1), num(p.t2), setting.name(),
                            std::to_string(seed), num(success), num(v_analytic), num(v_fit), num(sigma),
                            num(fidelity), num(conc)});
        return out;
    });
    return result;
}

RecipeResult run_scaling(const SweepConfig& c, std::size_t jobs) {
    const std::size_t nt = c.t.size();
    RecipeResult result = collect(c.xi.size() * nt, jobs, recipe_info(c.experiment, c.normalize).columns,
                                  [&](std::size_t i) {
        PointResult out;
        const double xi = c.xi[i / nt];
        const double t = c.t[i % nt];
        const double tc = std::sqrt(t);
        const InputPair pair = balanced_spdc(xi);
        auto m = closed_form_metrics(pair, tc, tc, c.normalize);
        out.rows.push_back({num(xi), num(t), num(tc), num(tc), num(m.success), num(t * t), num(m.visibility),
                            num(m.concurrence)});
        if (m.rho) out.states.push_back({json{{"xi", xi}, {"t", t}, {"setting", "X+"}}, *m.rho});
        return out;
    });
    json fits = json::array();
    for (double xi : c.xi) {
        const InputPair pair = balanced_spdc(xi);
        std::vector<double> x, y, direct;
        for (double t : c.t) {
            if (t < 1e-3 || t > 1e-1) continue;
            x.push_back(t);
            y.push_back(normalized_success(pair, std::sqrt(t), std::sqrt(t)));
            direct.push_back(t * t);
        }
        json fit = {{"xi", xi}, {"fit_range", {1e-3, 1e-1}}, {"points", x.size()}};
        if (x.size() >= 2) {
            fit["normalized_success_slope"] = log_log_slope(x, y);
            fit["direct_reference_slope"] = log_log_slope(x, direct);
        }
        fits.push_back(fit);
    }
    result.summary["slopes"] = fits;
    return result;
}

RecipeResult run_imbalance(const SweepConfig& c, std::size_t jobs) {
    struct Point {
        double eps, t1, t2;
    };
    std::vector<Point> points;
    for (double eps : c.epsilon)
        for (double t1 : c.t1)
            for (double t2 : c.t2) points.push_back({eps, t1, t2});
    return collect(points.size(), jobs, recipe_info(c.experiment, c.normalize).columns, [&](std::size_t i) {
        PointResult out;
        const Point& p = points[i];
        const double reference = 2.0 * p.t1 * p.t1 * p.t2 * p.t2 / (p.t1 * p.t1 + p.t2 * p.t2);
        const std::pair<const char*, InputPair> variants[] = {
            {"equal", equal_inputs(p.eps)},
            {"optimal", optimal_inputs(p.t1, p.t2, p.eps)},
        };
        for (const auto& [name, pair] : variants) {
            auto m = closed_form_metrics(pair, p.t1, p.t2, c.normalize);
            const double ratio = std::string_view(name) == "equal" ? 0.5 : balancing_pump_ratio(p.t1, p.t2);
            out.rows.push_back({num(p.eps), num(p.t1), num(p.t2), name, num(m.visibility), num(m.fidelity),
                                num(m.concurrence), num(m.success), num(reference), num(ratio)});
            if (m.rho) {
                out.states.push_back(
                    {json{{"epsilon", p.eps}, {"t1", p.t1}, {"t2", p.t2}, {"inputs", name}, {"setting", "X+"}},
                     *m.rho});
            }
        }
        return out;
    });
}

RecipeResult run_oracle(const SweepConfig& c, std::size_t jobs) {
    const auto draws = static_cast<std::size_t>(c.draws);
    RecipeResult result =
        collect(draws, jobs, recipe_info(c.experiment, c.normalize).columns, [&](std::size_t i) {
            PointResult out;
            std::mt19937_64 rng(derive_seed(c.seed, i, 0));
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            while (true) {
                const InputPair pair = random_pair(rng);
                const double t1 = unit(rng);
                const double t2 = unit(rng);
                const Sign sign = unit(rng) < 0.5 ? Sign::plus : Sign::minus;
                if (success_probability(pair, t1, t2) < 1e-12) continue;

                const SwapOutcome brute = simulate_swap(pair, t1, t2, BsmSetting::x(sign));
                const auto cf = closed_form_rho(pair, t1, t2, sign);
                const double rho_dev = max_abs_diff(brute.rho_ab.entries(), Matrix(cf.rho));
                const double norm_dev = std::abs(2.0 * brute.p_success - cf.norm);

                const PureState psi = build_inputs(pair);
                const DensityMatrix via_kraus =
                    propagate_kraus(psi, LossChannel(t1), LossChannel(t2));
                const DensityMatrix via_dilation = propagate(psi, LossChannel(t1), LossChannel(t2));
                const double kraus_dev = max_abs_diff(via_kraus.entries(), via_dilation.entries());

                const double conc_dev =
                    std::abs(concurrence_wootters(brute.rho_ab) - concurrence_closed_form(pair, t1, t2));
                const bool ok = rho_dev <= kOracleTolerance && norm_dev <= kOracleTolerance &&
                                kraus_dev <= kOracleTolerance && conc_dev <= kConcurrenceTolerance;
                out.violation = !ok;
                out.rows.push_back({std::to_string(i), num(t1), num(t2), std::string(1, sign_char(sign)),
                                    num(rho_dev), num(norm_dev), num(kraus_dev), num(conc_dev),
                                    ok ? "true" : "false"});
                out.states.push_back(
                    {json{{"draw", i}, {"t1", t1}, {"t2", t2}, {"setting", BsmSetting::x(sign).name()}},
                     brute.rho_ab});
                break;
            }
            return out;
        });
    double max_rho = 0, max_norm = 0, max_kraus = 0, max_conc = 0;
    for (const auto& row : result.table.rows) {
        max_rho = std::max(max_rho, std::stod(row[4]));
        max_norm = std::max(max_norm, std::stod(row[5]));
        max_kraus = std::max(max_kraus, std::stod(row[6]));
        max_conc = std::max(max_conc, std::stod(row[7]));
    }
    result.summary = {{"draws", draws},
                      {"max_rho_deviation", max_rho},
                      {"max_norm_deviation", max_norm},
                      {"max_kraus_deviation", max_kraus},
                      {"max_concurrence_deviation", max_conc},
                      {"tolerance", kOracleTolerance},
                      {"concurrence_tolerance", kConcurrenceTolerance},
                      {"passed", !result.invariant_violation}};
    return result;
}

}  // namespace

RecipeInfo recipe_info(Experiment e, bool normalize) {
    const std::string success = success_column(normalize);
    switch (e) {
        case Experiment::concurrence_surface:
            return {e, "concurrence of the swapped state over the (t1, t2) plane, maximally entangled inputs",
                    {"t1", "t2", "concurrence", "visibility", success}};
        case Experiment::concurrence_slices:
            return {e, "concurrence against t2 for fixed t1 values, with the optimal t2 per slice",
                    {"t1", "t2", "concurrence", "visibility", success}};
        case Experiment::theta_fringes:
            return {e, "phase-scanned verification fringes for each Charlie setting with Poisson counts",
                    {"point", "xi", "ratio", "t1", "t2", "setting", "seed", success, "visibility_analytic",
                     "visibility_fit", "visibility_sigma", "bell_fidelity", "concurrence"}};
        case Experiment::scaling_balanced:
            return {e, "success probability under balanced loss t1 = t2 = sqrt(t) against direct transmission",
                    {"xi", "t", "t1", "t2", success, "direct_reference", "visibility", "concurrence"}};
        case Experiment::imbalance_restore:
            return {e, "equal against loss-balancing inputs under unbalanced channels",
                    {"epsilon", "t1", "t2", "inputs", "visibility", "bell_fidelity", "concurrence", success,
                     "balanced_reference", "pump_ratio"}};
        case Experiment::oracle_check:
            return {e, "random draws comparing brute-force simulation with the closed form",
                    {"draw", "t1", "t2", "sign", "rho_max_dev", "norm_dev", "kraus_dev", "concurrence_dev",
                     "valid"}};
    }
    return {e, "", {}};
}

RecipeResult run_recipe(const SweepConfig& config, std::size_t jobs) {
    check_config(config);
    switch (config.experiment) {
        case Experiment::concurrence_surface: return run_surface(config, jobs);
        case Experiment::concurrence_slices: return run_slices(config, jobs);
        case Experiment::theta_fringes: return run_fringes(config, jobs);
        case Experiment::scaling_balanced: return run_scaling(config, jobs);
        case Experiment::imbalance_restore: return run_imbalance(config, jobs);
        case Experiment::oracle_check: return run_oracle(config, jobs);
    }
    throw ValidationError("unknown experiment");
}

std::string to_csv(const Table& table) {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    emit(table.columns);
    for (const auto& row : table.rows) emit(row);
    return out;
}

}  // namespace swapsim::harness
