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
#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

using namespace swapsim::harness;

namespace {

std::vector<std::string> violations_of(std::string_view doc) {
    try {
        validate_config(doc);
    } catch (const ConfigError& e) {
        return e.violations();
    }
    return {};
}

bool mentions(const std::vector<std::string>& vs, std::string_view needle) {
    return std::any_of(vs.begin(), vs.end(), [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Config, EmptyDocumentGivesDefaults) {
    const SweepConfig c = validate_config("");
    EXPECT_EQ(c.experiment, Experiment::oracle_check);
    EXPECT_EQ(c.seed, 0u);
    EXPECT_EQ(c.draws, 1000u);
    EXPECT_EQ(c, default_config(Experiment::oracle_check));
    EXPECT_EQ(validate_config("# only a comment\n\n   \n"), c);
}

TEST(Config, OutOfRangeNamesTheKey) {
    const auto vs = violations_of("experiment = concurrence-surface\nt1 = 1.2\n");
    ASSERT_EQ(vs.size(), 1u);
    EXPECT_NE(vs[0].find("t1"), std::string::npos);
    EXPECT_NE(vs[0].find("1.2"), std::string::npos);
}

TEST(Config, EveryViolationIsReported) {
    const auto vs = violations_of("t1 = 1.2\nepsilon = 0.7\nbogus = 3\nxi = 0.1x\nsettings = X+, W\n");
    EXPECT_EQ(vs.size(), 5u);
    EXPECT_TRUE(mentions(vs, "t1"));
    EXPECT_TRUE(mentions(vs, "epsilon"));
    EXPECT_TRUE(mentions(vs, "bogus"));
    EXPECT_TRUE(mentions(vs, "xi"));
    EXPECT_TRUE(mentions(vs, "'W'"));
}

TEST(Config, ErrorMessageListsViolations) {
    try {
        validate_config("t2 = -0.1\nratio = 2\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("t2"), std::string::npos);
        EXPECT_NE(what.find("ratio"), std::string::npos);
    }
}

TEST(Config, RejectsMalformedInput) {
    EXPECT_TRUE(mentions(violations_of("seed = -4\n"), "seed"));
    EXPECT_TRUE(mentions(violations_of("seed = 4\nseed = 5\n"), "more than once"));
    EXPECT_TRUE(mentions(violations_of("experiment = nonexistent-recipe\n"), "experiment"));
    EXPECT_TRUE(mentions(violations_of("t1\n"), "line 1"));
    EXPECT_TRUE(mentions(violations_of("t1 =\n"), "missing value"));
    EXPECT_TRUE(mentions(violations_of("t1 = linspace(0, 1)\n"), "three arguments"));
    EXPECT_TRUE(mentions(violations_of("t1 = linspace(0, 1, 0)\n"), "point count"));
    EXPECT_TRUE(mentions(violations_of("t = logspace(0, 1, 5)\n"), "positive"));
    EXPECT_TRUE(mentions(violations_of("t1 = spline(3)\n"), "unknown generator"));
    EXPECT_TRUE(mentions(violations_of("t1 = nan\n"), "malformed"));
    EXPECT_TRUE(mentions(violations_of("normalize = maybe\n"), "normalize"));
    EXPECT_TRUE(mentions(violations_of("draws = 0\n"), "draws"));
    EXPECT_TRUE(mentions(violations_of("theta = 6.3\n"), "theta"));
}

TEST(Config, RecipeSpecificDomains) {
    EXPECT_TRUE(mentions(violations_of("experiment = theta-fringes\ntheta = circle(6)\n"), "at least 8"));
    EXPECT_TRUE(mentions(violations_of("experiment = scaling-balanced\nt = 0, 0.5\n"), "scaling-balanced"));
    EXPECT_TRUE(mentions(violations_of("experiment = imbalance-restore\nt2 = 0, 0.5\n"), "imbalance-restore"));
    EXPECT_TRUE(mentions(violations_of("experiment = theta-fringes\nxi = 0.45\nratio = 0.9\n"), "truncation"));
    EXPECT_NO_THROW(validate_config("experiment = concurrence-surface\nt1 = 0, 0.5\n"));
}

TEST(Config, GridGenerators) {
    const SweepConfig c = validate_config(
        "experiment = concurrence-slices\nt1 = 0.3, 0.6,0.8 , 1\nt2 = linspace(0, 1, 101)\n"
        "theta = circle(4)\nxi = logspace(0.001, 0.1, 3)\n");
    EXPECT_EQ(c.t1, (std::vector<double>{0.3, 0.6, 0.8, 1.0}));
    ASSERT_EQ(c.t2.size(), 101u);
    EXPECT_EQ(c.t2.front(), 0.0);
    EXPECT_EQ(c.t2.back(), 1.0);
    EXPECT_NEAR(c.t2[37], 0.37, 1e-15);
    ASSERT_EQ(c.theta.size(), 4u);
    EXPECT_NEAR(c.theta[3], 1.5 * std::numbers::pi, 1e-15);
    ASSERT_EQ(c.xi.size(), 3u);
    EXPECT_EQ(c.xi.front(), 0.001);
    EXPECT_NEAR(c.xi[1], 0.01, 1e-15);
    EXPECT_EQ(c.xi.back(), 0.1);
}

TEST(Config, DefaultsPerExperiment) {
    const SweepConfig slices = default_config(Experiment::concurrence_slices);
    EXPECT_EQ(slices.t1, (std::vector<double>{0.3, 0.6, 0.8, 1.0}));
    EXPECT_EQ(slices.t2.size(), 101u);
    const SweepConfig scaling = default_config(Experiment::scaling_balanced);
    EXPECT_EQ(scaling.t.front(), 1e-3);
    EXPECT_EQ(scaling.t.back(), 1.0);
    EXPECT_EQ(scaling.xi, (std::vector<double>{0.05}));
    EXPECT_TRUE(scaling.normalize);
    for (Experiment e : all_experiments()) {
        EXPECT_NO_THROW(check_config(default_config(e))) << experiment_name(e);
        EXPECT_EQ(parse_experiment(experiment_name(e)), e);
    }
    EXPECT_EQ(all_experiments().size(), 6u);
}

TEST(Config, ImbalanceRecipeRoundTrips) {
    const std::string doc =
        "experiment = imbalance-restore\n"
        "t1 = 1\n"
        "t2 = linspace(0.1, 1, 10)\n"
        "epsilon = 0.01, 0.05\n"
        "normalize = true\n"
        "seed = 7\n"
        "output = results/fig5b\n";
    const SweepConfig c = validate_config(doc);
    const std::string text = to_text(c);
    const SweepConfig again = validate_config(text);
    EXPECT_EQ(again, c);
    EXPECT_EQ(to_text(again), text);
}

TEST(Config, RandomConfigsRoundTrip) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto grid = [&](double scale, double floor) {
        std::vector<double> v(1 + rng() % 5);
        for (double& x : v) x = floor + (scale - floor) * unit(rng);
        return v;
    };
    for (int i = 0; i < 200; ++i) {
        SweepConfig c = default_config(all_experiments()[rng() % 6]);
        c.t1 = grid(1.0, 0.01);
        c.t2 = grid(1.0, 0.01);
        c.t = grid(1.0, 0.01);
        c.epsilon = grid(0.5, 0.01);
        c.xi = grid(0.3, 0.0);
        c.ratio = grid(1.0, 0.0);
        c.seed = rng();
        c.normalize = rng() % 2 == 0;
        c.mean_counts = 1e3 * unit(rng);
        ASSERT_EQ(validate_config(to_text(c)), c) << to_text(c);
    }
}

TEST(Config, CheckConfigCatchesOverrides) {
    SweepConfig c = default_config(Experiment::concurrence_surface);
    c.output = "";
    c.t1 = {};
    try {
        check_config(c);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e.violations(), "output"));
        EXPECT_TRUE(mentions(e.violations(), "t1"));
    }
}
