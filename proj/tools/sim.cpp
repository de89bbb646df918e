// SPDX-License-Identifier: Apache-2.0
//
// irsim - link-level simulator for IRS-aided downlinks under channel aging and phase noise
// Copyright (C) 2026 The irsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// sim run      - Monte Carlo sweep of one scenario to CSV
// sim verify   - algebraic invariance and oracle checks, nonzero exit on failure
// sim defaults - resolved configuration in config-file syntax

#include "CLI11.hpp"
#include "irsim/irsim.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

int main(int argc, char **argv)
{
    CLI::App app{"Spectral efficiency of IRS-aided MISO downlinks under channel aging and phase noise"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Run a scenario sweep and write a CSV");
    std::string scenario = "fig2a";
    std::string config_path;
    std::string out_path = "results.csv";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    run->add_option("--scenario", scenario, "fig2a|fig2b|fig2c|fig2d|custom")
        ->check(CLI::IsMember({"fig2a", "fig2b", "fig2c", "fig2d", "custom"}));
    run->add_option("--config", config_path, "Config file (key = value); defaults when omitted");
    run->add_option("--out", out_path, "Output CSV path");
    run->add_option("--seed", seed, "Root seed (overrides the config)");
    run->add_option("--trials", trials, "Trials per point (overrides the config)");
    run->add_option("--workers", workers, "Worker threads; results do not depend on it");

    auto *verify = app.add_subcommand("verify", "Run the invariance and oracle-equivalence checks");
    auto *defaults = app.add_subcommand("defaults", "Print the resolved configuration");
    defaults->add_option("--config", config_path, "Config file to resolve against the defaults");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            irsim::ScenarioConfig cfg = config_path.empty() ? irsim::ScenarioConfig{} : irsim::load_config(config_path);
            if (seed)
                cfg.seed = *seed;
            if (trials)
                cfg.trials = *trials;
            irsim::validate(cfg);

            const auto start = std::chrono::steady_clock::now();
            const auto records = irsim::run_sweep(cfg, scenario, workers);
            irsim::write_results(records, out_path);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::fprintf(stderr, "%s: %zu records, %zu trials/point, %.1f s -> %s\n", scenario.c_str(),
                         records.size(), cfg.trials, secs, out_path.c_str());
            return 0;
        }
        if (*verify)
        {
            bool ok = true;
            for (const auto &check : irsim::verify::run_all())
            {
                std::printf("[%s] %s: worst %.3e (limit %.3e, %zu instances)\n", check.passed ? "PASS" : "FAIL",
                            check.name.c_str(), check.worst, check.threshold, check.instances);
                ok = ok && check.passed;
            }
            return ok ? 0 : 1;
        }
        if (*defaults)
        {
            const irsim::ScenarioConfig cfg =
                config_path.empty() ? irsim::ScenarioConfig{} : irsim::load_config(config_path);
            std::cout << irsim::format_config(cfg);
            return 0;
        }
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
