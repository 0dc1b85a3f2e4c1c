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

#include "swapsim/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

#include "swapsim/entanglement_metrics.hpp"
#include "swapsim/format.hpp"
#include "swapsim/swap_protocol.hpp"

namespace swapsim::harness {

namespace {

constexpr std::string_view kKeys[] = {"experiment", "seed",  "output", "normalize", "draws",
                                      "mean_counts", "t1",   "t2",     "t",         "theta",
                                      "epsilon",    "xi",    "ratio",  "settings"};

constexpr std::uint64_t kMaxGridPoints = 1'000'000;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::vector<double> linspace(double a, double b, std::uint64_t n) {
    std::vector<double> v(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        const double m = static_cast<double>(n - 1);
        v[k] = n == 1 ? a : (a * (m - static_cast<double>(k)) + b * static_cast<double>(k)) / m;
    }
    if (n > 1) v.back() = b;
    return v;
}

std::vector<double> logspace(double a, double b, std::uint64_t n) {
    std::vector<double> v(n);
    const double la = std::log(a);
    const double lb = std::log(b);
    for (std::uint64_t k = 0; k < n; ++k) {
        v[k] = n == 1 ? a : std::exp(la + (lb - la) * static_cast<double>(k) / static_cast<double>(n - 1));
    }
    v.front() = a;
    if (n > 1) v.back() = b;
    return v;
}

// Parses a grid expression; appends a message to `errors` on failure.
std::vector<double> parse_grid(std::string_view key, std::string_view value,
                               std::vector<std::string>& errors) {
    auto fail = [&](const std::string& why) {
        errors.push_back(std::string(key) + ": " + why + " in '" + std::string(value) + "'");
        return std::vector<double>{};
    };
    const auto open = value.find('(');
    if (open != std::string_view::npos) {
        if (value.back() != ')') return fail("unterminated generator");
        const std::string_view fn = trim(value.substr(0, open));
        const auto args = split(value.substr(open + 1, value.size() - open - 2), ',');
        if (fn == "circle") {
            if (args.size() != 1) return fail("circle takes one argument");
            const auto n = parse_uint(args[0]);
            if (!n || *n == 0 || *n > kMaxGridPoints) return fail("malformed point count");
            return theta_grid(static_cast<std::size_t>(*n));
        }
        if (fn != "linspace" && fn != "logspace") return fail("unknown generator '" + std::string(fn) + "'");
        if (args.size() != 3) return fail(std::string(fn) + " takes three arguments");
        const auto a = parse_double(args[0]);
        const auto b = parse_double(args[1]);
        const auto n = parse_uint(args[2]);
        if (!a || !b) return fail("malformed number");
        if (!n || *n == 0 || *n > kMaxGridPoints) return fail("malformed point count");
        if (fn == "logspace") {
            if (!(*a > 0.0 && *b > 0.0)) return fail("logspace endpoints must be positive");
            return logspace(*a, *b, *n);
        }
        return linspace(*a, *b, *n);
    }
    std::vector<double> out;
    for (std::string_view item : split(value, ',')) {
        const auto v = parse_double(item);
        if (!v) return fail("malformed number '" + std::string(item) + "'");
        out.push_back(*v);
    }
    return out;
}

std::optional<bool> parse_bool(std::string_view s) {
    if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
    if (s == "false" || s == "no" || s == "0" || s == "off") return false;
    return std::nullopt;
}

void check_grid(std::vector<std::string>& errors, std::string_view key, const std::vector<double>& grid,
                double lo, double hi, bool lo_open, bool hi_open, std::string_view domain) {
    if (grid.empty()) {
        errors.push_back(std::string(key) + ": grid must be nonempty");
        return;
    }
    for (double v : grid) {
        const bool ok_lo = lo_open ? v > lo : v >= lo;
        const bool ok_hi = hi_open ? v < hi : v <= hi;
        if (!ok_lo || !ok_hi) {
            errors.push_back(std::string(key) + ": value " + format_double(v) + " outside " +
                             std::string(domain));
            return;
        }
    }
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_double(v[i]);
    }
    return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : ValidationError([&] {
          std::string msg = "invalid configuration:";
          for (const auto& v : violations) msg += "\n  " + v;
          return msg;
      }()),
      violations_(std::move(violations)) {}

std::string_view experiment_name(Experiment e) {
    switch (e) {
        case Experiment::concurrence_surface: return "concurrence-surface";
        case Experiment::concurrence_slices: return "concurrence-slices";
        case Experiment::theta_fringes: return "theta-fringes";
        case Experiment::scaling_balanced: return "scaling-balanced";
        case Experiment::imbalance_restore: return "imbalance-restore";
        case Experiment::oracle_check: return "oracle-check";
    }
    return "unknown";
}

const std::vector<Experiment>& all_experiments() {
    static const std::vector<Experiment> all = {
        Experiment::concurrence_surface, Experiment::concurrence_slices, Experiment::theta_fringes,
        Experiment::scaling_balanced,    Experiment::imbalance_restore,  Experiment::oracle_check,
    };
    return all;
}

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (Experiment e : all_experiments()) {
        if (experiment_name(e) == name) return e;
    }
    return std::nullopt;
}

SweepConfig default_config(Experiment e) {
    SweepConfig c;
    c.experiment = e;
    c.t1 = {1.0};
    c.t2 = {1.0};
    c.t = {1.0};
    c.theta = theta_grid(24);
    c.epsilon = {0.01};
    c.xi = {0.05};
    c.ratio = {0.5};
    c.settings = {"X+", "X-", "Y+", "Y-", "Z+", "Z-"};
    switch (e) {
        case Experiment::concurrence_surface:
            c.t1 = linspace(0.0, 1.0, 51);
            c.t2 = linspace(0.0, 1.0, 51);
            break;
        case Experiment::concurrence_slices:
            c.t1 = {0.3, 0.6, 0.8, 1.0};
            c.t2 = linspace(0.0, 1.0, 101);
            break;
        case Experiment::scaling_balanced:
            c.t = logspace(1e-3, 1.0, 31);
            c.normalize = true;
            break;
        case Experiment::imbalance_restore:
            c.t2 = linspace(0.1, 1.0, 10);
            c.normalize = true;
            break;
        case Experiment::theta_fringes:
        case Experiment::oracle_check:
            break;
    }
    return c;
}

void check_config(const SweepConfig& c) {
    std::vector<std::string> errors;
    const double two_pi = 2.0 * std::numbers::pi;
    check_grid(errors, "t1", c.t1, 0.0, 1.0, false, false, "[0, 1]");
    check_grid(errors, "t2", c.t2, 0.0, 1.0, false, false, "[0, 1]");
    check_grid(errors, "t", c.t, 0.0, 1.0, false, false, "[0, 1]");
    check_grid(errors, "theta", c.theta, 0.0, two_pi, false, true, "[0, 2pi)");
    check_grid(errors, "epsilon", c.epsilon, 0.0, 0.5, true, false, "(0, 0.5]");
    check_grid(errors, "xi", c.xi, 0.0, 0.5, false, false, "[0, 0.5]");
    check_grid(errors, "ratio", c.ratio, 0.0, 1.0, false, false, "[0, 1]");
    if (c.settings.empty()) errors.push_back("settings: list must be nonempty");
    for (const auto& s : c.settings) {
        try {
            BsmSetting::parse(s);
        } catch (const ValidationError&) {
            errors.push_back("settings: unknown setting '" + s + "'");
        }
    }
    if (c.draws == 0) errors.push_back("draws: must be at least 1");
    if (!(c.mean_counts >= 0.0) || !std::isfinite(c.mean_counts)) {
        errors.push_back("mean_counts: must be finite and non-negative");
    }
    if (c.output.empty()) errors.push_back("output: must be a nonempty path");

    switch (c.experiment) {
        case Experiment::scaling_balanced:
            check_grid(errors, "t", c.t, 0.0, 1.0, true, false, "(0, 1] for scaling-balanced");
            break;
        case Experiment::imbalance_restore:
            check_grid(errors, "t1", c.t1, 0.0, 1.0, true, false, "(0, 1] for imbalance-restore");
            check_grid(errors, "t2", c.t2, 0.0, 1.0, true, false, "(0, 1] for imbalance-restore");
            break;
        case Experiment::theta_fringes: {
            if (c.theta.size() < 8) errors.push_back("theta: theta-fringes needs at least 8 angles");
            // Each source receives xi * sqrt(2 * share); the larger share must stay below 0.5.
            for (double xi : c.xi) {
                for (double r : c.ratio) {
                    if (xi * std::sqrt(2.0 * std::max(r, 1.0 - r)) > 0.5) {
                        errors.push_back("xi: " + format_double(xi) + " at ratio " + format_double(r) +
                                         " exceeds the SPDC truncation limit 0.5");
                    }
                }
            }
            break;
        }
        default:
            break;
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
}

SweepConfig validate_config(std::string_view raw) {
    std::vector<std::string> errors;
    std::map<std::string, std::string, std::less<>> values;
    std::size_t line_no = 0;
    for (std::string_view line : split(raw, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
            errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            continue;
        }
        if (value.empty()) {
            errors.push_back(key + ": missing value");
            continue;
        }
        if (!values.emplace(key, value).second) {
            errors.push_back(key + ": given more than once");
        }
    }

    Experiment experiment = Experiment::oracle_check;
    if (const auto it = values.find("experiment"); it != values.end()) {
        if (const auto e = parse_experiment(it->second)) {
            experiment = *e;
        } else {
            errors.push_back("experiment: unknown recipe '" + it->second + "'");
        }
    }
    SweepConfig c = default_config(experiment);

    auto grid = [&](std::string_view key, std::vector<double>& target) {
        if (const auto it = values.find(key); it != values.end()) {
            const std::size_t before = errors.size();
            auto parsed = parse_grid(key, it->second, errors);
            if (errors.size() == before) target = std::move(parsed);
        }
    };
    grid("t1", c.t1);
    grid("t2", c.t2);
    grid("t", c.t);
    grid("theta", c.theta);
    grid("epsilon", c.epsilon);
    grid("xi", c.xi);
    grid("ratio", c.ratio);

    if (const auto it = values.find("settings"); it != values.end()) {
        c.settings.clear();
        for (std::string_view s : split(it->second, ',')) c.settings.emplace_back(s);
    }
    if (const auto it = values.find("seed"); it != values.end()) {
        if (const auto v = parse_uint(it->second)) c.seed = *v;
        else errors.push_back("seed: malformed unsigned integer '" + it->second + "'");
    }
    if (const auto it = values.find("draws"); it != values.end()) {
        if (const auto v = parse_uint(it->second)) c.draws = *v;
        else errors.push_back("draws: malformed unsigned integer '" + it->second + "'");
    }
    if (const auto it = values.find("mean_counts"); it != values.end()) {
        if (const auto v = parse_double(it->second)) c.mean_counts = *v;
        else errors.push_back("mean_counts: malformed number '" + it->second + "'");
    }
    if (const auto it = values.find("normalize"); it != values.end()) {
        if (const auto v = parse_bool(it->second)) c.normalize = *v;
        else errors.push_back("normalize: expected true or false, got '" + it->second + "'");
    }
    if (const auto it = values.find("output"); it != values.end()) {
        c.output = it->second;
    }

    try {
        check_config(c);
    } catch (const ConfigError& e) {
        errors.insert(errors.end(), e.violations().begin(), e.violations().end());
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return c;
}

std::string to_text(const SweepConfig& c) {
    std::string out;
    auto line = [&](std::string_view key, const std::string& value) {
        out += std::string(key) + " = " + value + "\n";
    };
    line("experiment", std::string(experiment_name(c.experiment)));
    line("seed", std::to_string(c.seed));
    line("output", c.output);
    line("normalize", c.normalize ? "true" : "false");
    line("draws", std::to_string(c.draws));
    line("mean_counts", format_double(c.mean_counts));
    line("t1", join(c.t1));
    line("t2", join(c.t2));
    line("t", join(c.t));
    line("theta", join(c.theta));
    line("epsilon", join(c.epsilon));
    line("xi", join(c.xi));
    line("ratio", join(c.ratio));
    std::string settings;
    for (std::size_t i = 0; i < c.settings.size(); ++i) {
        if (i > 0) settings += ", ";
        settings += c.settings[i];
    }
    line("settings", settings);
    return out;
}

}  // namespace swapsim::harness
