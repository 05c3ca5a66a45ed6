// SPDX-License-Identifier: Apache-2.0
//
// nfsec: robust near-field secure beamforming for extremely large arrays
// Copyright (C) 2026 The nfsec Authors
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

// Command-line driver: loads a scenario, runs the requested schemes and writes the CSV artifacts

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "nfsec/config.hpp"
#include "nfsec/runner.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"Robust near-field secure beamforming experiments"};

    std::string config_path;
    std::optional<std::string> scheme;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::optional<std::size_t> trials;
    std::optional<std::size_t> grid;
    std::optional<std::string> preset;
    std::size_t workers = 1;

    app.add_option("--config", config_path, "scenario JSON file (defaults are used when omitted)");
    app.add_option("--scheme", scheme, "scheme name or 'all'");
    app.add_option("--seed", seed, "Monte-Carlo seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--trials", trials, "Monte-Carlo trials");
    app.add_option("--grid", grid, "dense-grid resolution per axis");
    app.add_option("--preset", preset, "named preset (ci)")->check(CLI::IsMember({"ci"}));
    app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    nfsec::ScenarioConfig config;
    try
    {
        if (!config_path.empty())
            config = nfsec::load_config(config_path);
        if (preset)
            nfsec::apply_ci_preset(config);
        if (scheme)
            config.schemes = *scheme == "all" ? nfsec::all_schemes()
                                              : std::vector<nfsec::Scheme>{nfsec::parse_scheme(*scheme)};
        if (seed)
            config.seed = *seed;
        if (trials)
            config.trials = *trials;
        if (grid)
            config.grid = *grid;
        nfsec::validate(config);
    }
    catch (const std::exception &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }

    try
    {
        nfsec::RunOptions options;
        options.out_dir = out_dir;
        options.workers = workers;
        const nfsec::RunSummary summary = nfsec::run(config, options);
        for (const auto &p : summary.points)
        {
            std::printf("%-15s", nfsec::to_string(p.scheme).c_str());
            if (p.sweep_value)
                std::printf(" %s=%-10g", config.sweep->parameter.c_str(), *p.sweep_value);
            if (!p.error.empty())
                std::printf(" error: %s\n", p.error.c_str());
            else
                std::printf(" %-14s sum_rate=%.6f secure=%.4f iterations=%d\n",
                            nfsec::to_string(p.solve.status).c_str(), p.eval.sum_rate, p.eval.secure.full,
                            p.solve.iterations);
        }
        if (summary.exit_code == 2)
            std::cerr << "solver failure on every point\n";
        return summary.exit_code;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
