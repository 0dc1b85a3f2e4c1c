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
#include <string>

#include "gtest/gtest.h"
#include "swapsim/harness/parallel.hpp"

using namespace swapsim::harness;

namespace {

std::size_t column(const Table& t, const std::string& name) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), name);
    EXPECT_NE(it, t.columns.end()) << name;
    return static_cast<std::size_t>(it - t.columns.begin());
}

double cell(const Table& t, std::size_t row, const std::string& name) {
    return std::stod(t.rows[row][column(t, name)]);
}

SweepConfig config_for(std::string_view doc) { return validate_config(doc); }

}  // namespace

TEST(Recipes, ColumnContract) {
    EXPECT_EQ(recipe_info(Experiment::concurrence_slices).columns,
              (std::vector<std::string>{"t1", "t2", "concurrence", "visibility", "p_success"}));
    EXPECT_EQ(recipe_info(Experiment::concurrence_slices, true).columns.back(), "normalized_success");
    for (Experiment e : all_experiments()) {
        SweepConfig c = default_config(e);
        c.draws = 20;
        const RecipeResult r = run_recipe(c);
        EXPECT_EQ(r.table.columns, recipe_info(e, c.normalize).columns) << experiment_name(e);
        EXPECT_FALSE(r.table.rows.empty());
        for (const auto& row : r.table.rows) ASSERT_EQ(row.size(), r.table.columns.size());
    }
}

TEST(Recipes, CsvFormat) {
    const Table t{{"a", "b"}, {{"1", "0.5"}, {"2", "nan"}}};
    EXPECT_EQ(to_csv(t), "a,b\n1,0.5\n2,nan\n");
    const std::string csv = to_csv(run_recipe(default_config(Experiment::concurrence_slices)).table);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_EQ(csv.rfind("t1,t2,concurrence,visibility,p_success\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 4 * 101);
}

TEST(Recipes, DeterministicGivenSeed) {
    const SweepConfig c = config_for("experiment = theta-fringes\nseed = 42\nt2 = 0.5, 1\n");
    const RecipeResult a = run_recipe(c);
    const RecipeResult b = run_recipe(c);
    EXPECT_EQ(to_csv(a.table), to_csv(b.table));
    ASSERT_EQ(a.aux.size(), b.aux.size());
    for (std::size_t i = 0; i < a.aux.size(); ++i) {
        EXPECT_EQ(a.aux[i].name, b.aux[i].name);
        EXPECT_EQ(a.aux[i].content, b.aux[i].content);
    }
    SweepConfig other = c;
    other.seed = 43;
    EXPECT_NE(run_recipe(other).aux[0].content, a.aux[0].content);
}

TEST(Recipes, ParallelMatchesSerial) {
    for (std::string_view doc : {"experiment = concurrence-surface\n", "experiment = theta-fringes\nt1 = 0.5, 1\n",
                                 "experiment = oracle-check\ndraws = 50\nseed = 3\n",
                                 "experiment = imbalance-restore\n"}) {
        const SweepConfig c = config_for(doc);
        const RecipeResult serial = run_recipe(c, 1);
        const RecipeResult parallel = run_recipe(c, 4);
        EXPECT_EQ(to_csv(serial.table), to_csv(parallel.table)) << doc;
        EXPECT_EQ(serial.aux.size(), parallel.aux.size());
        EXPECT_EQ(serial.summary, parallel.summary);
    }
}

TEST(Recipes, ParallelMapPropagatesExceptions) {
    EXPECT_THROW(parallel_map(10, 3,
                              [](std::size_t i) {
                                  if (i == 7) throw std::runtime_error("boom");
                                  return i;
                              }),
                 std::runtime_error);
    const auto squares = parallel_map(100, 4, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < squares.size(); ++i) EXPECT_EQ(squares[i], i * i);
}

TEST(Recipes, SlicesMatchBalancedInputFormula) {
    const RecipeResult r = run_recipe(default_config(Experiment::concurrence_slices));
    ASSERT_EQ(r.table.rows.size(), 4u * 101u);
    for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
        const double t1 = cell(r.table, i, "t1");
        const double t2 = cell(r.table, i, "t2");
        const double c = cell(r.table, i, "concurrence");
        const double expected = t1 * t2 / (t1 * t1 + t2 * t2 - t1 * t1 * t2 * t2);
        if (t2 == 0.0) {
            EXPECT_EQ(c, 0.0);
            continue;
        }
        EXPECT_NEAR(c, expected, 1e-12) << t1 << " " << t2;
        EXPECT_NEAR(cell(r.table, i, "visibility"), 2 * t1 * t2 / (t1 * t1 + t2 * t2), 1e-12);
        EXPECT_NEAR(cell(r.table, i, "p_success"), 0.5 * (t1 * t1 + t2 * t2 - t1 * t1 * t2 * t2), 1e-15);
    }
    const auto& optima = r.summary["optima"];
    ASSERT_EQ(optima.size(), 4u);
    const double t1 = optima[0]["t1"].get<double>();
    EXPECT_NEAR(optima[0]["optimal_t2"].get<double>(), t1 / std::sqrt(1.0 - t1 * t1), 1e-5);
    EXPECT_TRUE(optima[3]["boundary"].get<bool>());
}

TEST(Recipes, SurfaceMarksDegenerateCorner) {
    const RecipeResult r = run_recipe(config_for("experiment = concurrence-surface\nt1 = 0\nt2 = 0, 0.5\n"));
    ASSERT_EQ(r.table.rows.size(), 2u);
    EXPECT_TRUE(std::isnan(cell(r.table, 0, "concurrence")));
    EXPECT_EQ(cell(r.table, 0, "p_success"), 0.0);
    EXPECT_EQ(cell(r.table, 1, "concurrence"), 0.0);
}

TEST(Recipes, ScalingIsLinearInTransmission) {
    const RecipeResult r = run_recipe(default_config(Experiment::scaling_balanced));
    const auto& fit = r.summary["slopes"][0];
    EXPECT_NEAR(fit["normalized_success_slope"].get<double>(), 1.0, 0.02);
    EXPECT_NEAR(fit["direct_reference_slope"].get<double>(), 2.0, 1e-12);
    for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
        const double t = cell(r.table, i, "t");
        EXPECT_NEAR(cell(r.table, i, "t1") * cell(r.table, i, "t2"), t, 1e-15);
        EXPECT_NEAR(cell(r.table, i, "visibility"), 1.0, 1e-12);
        EXPECT_LE(cell(r.table, i, "normalized_success"), 1.0 + 1e-12);
    }
}

TEST(Recipes, ImbalanceRestoration) {
    const RecipeResult r = run_recipe(config_for("experiment = imbalance-restore\nt2 = 0.2\n"));
    ASSERT_EQ(r.table.rows.size(), 2u);
    EXPECT_EQ(r.table.rows[0][column(r.table, "inputs")], "equal");
    EXPECT_NEAR(cell(r.table, 0, "visibility"), 2 * 0.2 / (1 + 0.04), 1e-3);
    EXPECT_GE(cell(r.table, 1, "visibility"), 0.999);
    EXPECT_GE(cell(r.table, 1, "bell_fidelity"), 0.999);
    EXPECT_NEAR(cell(r.table, 1, "normalized_success"), 2 * 0.04 / 1.04, 1e-3);
    EXPECT_NEAR(cell(r.table, 1, "balanced_reference"), 2 * 0.04 / 1.04, 1e-15);
    EXPECT_NEAR(cell(r.table, 1, "pump_ratio"), 0.04 / 1.04, 1e-15);
}

TEST(Recipes, FringesPerSetting) {
    const SweepConfig c = default_config(Experiment::theta_fringes);
    const RecipeResult r = run_recipe(c);
    ASSERT_EQ(r.table.rows.size(), 6u);
    ASSERT_EQ(r.aux.size(), 6u);
    EXPECT_EQ(r.aux[0].name, "theta-fringes_p000_Xplus.csv");
    EXPECT_EQ(r.aux[5].name, "theta-fringes_p000_Zminus.csv");
    EXPECT_EQ(r.aux[0].content.rfind("theta_rad,outcome_sign,counts\n", 0), 0u);
    EXPECT_EQ(r.states.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
        const std::string setting = r.table.rows[i][column(r.table, "setting")];
        const double v_fit = cell(r.table, i, "visibility_fit");
        const double sigma = cell(r.table, i, "visibility_sigma");
        if (setting[0] == 'Z') {
            EXPECT_EQ(cell(r.table, i, "visibility_analytic"), 0.0);
            EXPECT_LT(v_fit, 3 * sigma) << setting;
        } else {
            EXPECT_NEAR(cell(r.table, i, "visibility_analytic"), 1.0, 1e-12);
            EXPECT_NEAR(cell(r.table, i, "bell_fidelity"), 1.0, 1e-12);
            EXPECT_NEAR(v_fit, 1.0, 5 * sigma + 1e-6) << setting;
        }
    }
}

TEST(Recipes, OracleCheckPasses) {
    SweepConfig c = default_config(Experiment::oracle_check);
    c.seed = 42;
    const RecipeResult r = run_recipe(c, 2);
    EXPECT_FALSE(r.invariant_violation);
    EXPECT_EQ(r.table.rows.size(), 1000u);
    EXPECT_TRUE(r.summary["passed"].get<bool>());
    EXPECT_LT(r.summary["max_rho_deviation"].get<double>(), 1e-12);
    EXPECT_LT(r.summary["max_concurrence_deviation"].get<double>(), 1e-10);
}

TEST(Recipes, RejectsInvalidConfig) {
    SweepConfig c = default_config(Experiment::concurrence_surface);
    c.t1 = {1.5};
    EXPECT_THROW(run_recipe(c), ConfigError);
}
