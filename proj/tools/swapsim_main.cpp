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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "swapsim/harness/config.hpp"
#include "swapsim/harness/recipes.hpp"
#include "swapsim/serialize.hpp"
#include "swapsim/version.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace swapsim::harness;

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kInvariant = 4 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path + "'");
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

json config_json(const SweepConfig& c) {
    return {{"experiment", std::string(experiment_name(c.experiment))},
            {"t1", c.t1},
            {"t2", c.t2},
            {"t", c.t},
            {"theta", c.theta},
            {"epsilon", c.epsilon},
            {"xi", c.xi},
            {"ratio", c.ratio},
            {"settings", c.settings},
            {"seed", c.seed},
            {"output", c.output},
            {"normalize", c.normalize},
            {"draws", c.draws},
            {"mean_counts", c.mean_counts}};
}

// Runs the recipe and writes the CSV, auxiliary files, sidecar and optional
// state dump. Returns the exit code.
int execute(const SweepConfig& config, std::size_t jobs, const std::string& dump_path, bool quiet) {
    const auto start = std::chrono::steady_clock::now();
    const RecipeResult result = run_recipe(config, jobs);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const fs::path dir(config.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

    const std::string name(experiment_name(config.experiment));
    json outputs = json::array();
    write_file(dir / (name + ".csv"), to_csv(result.table));
    outputs.push_back(name + ".csv");
    for (const auto& aux : result.aux) {
        write_file(dir / aux.name, aux.content);
        outputs.push_back(aux.name);
    }
    if (!dump_path.empty()) {
        json states = json::array();
        for (const auto& s : result.states) {
            states.push_back({{"context", s.context}, {"state", json::parse(swapsim::density_matrix_to_json(s.rho))}});
        }
        write_file(dump_path, states.dump(1) + "\n");
    }
    const json sidecar = {{"experiment", name},
                          {"library_version", swapsim::kVersion},
                          {"wall_time_seconds", wall},
                          {"jobs", jobs},
                          {"rows", result.table.rows.size()},
                          {"columns", result.table.columns},
                          {"config", config_json(config)},
                          {"config_text", to_text(config)},
                          {"outputs", outputs},
                          {"summary", result.summary}};
    write_file(dir / (name + ".json"), sidecar.dump(2) + "\n");

    if (!quiet) {
        std::cout << name << ": " << result.table.rows.size() << " rows -> " << (dir / (name + ".csv")).string()
                  << "\n";
        if (!result.summary.empty()) std::cout << result.summary.dump(2) << "\n";
    }
    if (result.invariant_violation) {
        std::cerr << "swapsim: invariant violation detected\n";
        return kInvariant;
    }
    return kOk;
}

void print_recipes() {
    for (Experiment e : all_experiments()) {
        const RecipeInfo info = recipe_info(e);
        std::cout << experiment_name(e) << "\n  " << info.description << "\n  columns:";
        for (std::size_t i = 0; i < info.columns.size(); ++i) {
            std::cout << (i == 0 ? " " : ", ") << info.columns[i];
        }
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement swapping over lossy channels: sweeps and oracle checks"};
    app.set_version_flag("--version", std::string(swapsim::kVersion));
    app.require_subcommand(1);

    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());

    auto* run = app.add_subcommand("run", "Run the experiment described by a configuration file");
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string dump_path;
    run->add_option("config", config_path, "Configuration file")->required();
    run->add_option("--out", out_dir, "Output directory (overrides 'output')");
    auto* seed_opt = run->add_option("--seed", seed, "Random seed (overrides 'seed')");
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run->add_option("--dump-state", dump_path, "Write every post-selected state as JSON to this path");

    auto* check = app.add_subcommand("check", "Run the brute-force against closed-form oracle suite");
    std::uint64_t check_draws = 1000;
    std::uint64_t check_seed = 42;
    std::string check_out;
    check->add_option("--draws", check_draws, "Number of random draws")->check(CLI::PositiveNumber);
    check->add_option("--seed", check_seed, "Random seed");
    check->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    check->add_option("--out", check_out, "Also write the oracle CSV and sidecar to this directory");

    app.add_subcommand("recipes", "List experiments and their CSV columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand("recipes")) {
            print_recipes();
            return kOk;
        }
        if (app.got_subcommand("check")) {
            SweepConfig config = default_config(Experiment::oracle_check);
            config.draws = check_draws;
            config.seed = check_seed;
            if (check_out.empty()) {
                const RecipeResult result = run_recipe(config, jobs);
                std::cout << result.summary.dump(2) << "\n";
                if (result.invariant_violation) {
                    std::cerr << "swapsim: invariant violation detected\n";
                    return kInvariant;
                }
                return kOk;
            }
            config.output = check_out;
            return execute(config, jobs, "", false);
        }
        SweepConfig config = validate_config(read_file(config_path));
        if (!out_dir.empty()) config.output = out_dir;
        if (seed_opt->count() > 0) config.seed = seed;
        check_config(config);
        return execute(config, jobs, dump_path, false);
    } catch (const IoError& e) {
        std::cerr << "swapsim: " << e.what() << "\n";
        return kIo;
    } catch (const swapsim::ValidationError& e) {
        std::cerr << "swapsim: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "swapsim: " << e.what() << "\n";
        return 1;
    }
}
