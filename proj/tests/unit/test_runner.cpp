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


#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "nfsec/runner.hpp"

using namespace nfsec;
namespace fs = std::filesystem;

namespace
{
    ScenarioConfig tiny()
    {
        ScenarioConfig c;
        c.elements = 8;
        c.trials = 200;
        c.grid = 40;
        c.sampling_count = 8;
        c.schemes = {Scheme::non_robust, Scheme::proposed};
        c.sweep = SweepSpec{"kappa", {0.0, 0.1}};
        c.beampattern.nx = 6;
        c.beampattern.ny = 5;
        return c;
    }

    std::vector<std::string> lines(const fs::path &p)
    {
        std::ifstream f(p);
        std::vector<std::string> out;
        for (std::string l; std::getline(f, l);)
            out.push_back(l);
        return out;
    }

    // Drops the trailing wall_time column
    std::vector<std::string> numeric_content(const fs::path &p)
    {
        auto rows = lines(p);
        for (auto &r : rows)
            r = r.substr(0, r.rfind(','));
        return rows;
    }

    fs::path scratch(const std::string &name)
    {
        const fs::path p = fs::temp_directory_path() / name;
        fs::remove_all(p);
        return p;
    }
}

TEST_CASE("runner writes the documented artifacts", "[runner]")
{
    const fs::path dir = scratch("nfsec_runner_artifacts");
    RunOptions o;
    o.out_dir = dir.string();
    const RunSummary s = run(tiny(), o);
    CHECK(s.exit_code == 0);
    REQUIRE(s.points.size() == 4);
    CHECK(s.points[0].scheme == Scheme::non_robust);
    CHECK(*s.points[1].sweep_value == 0.0);
    CHECK(*s.points[2].sweep_value == 0.1);

    const auto results = lines(dir / "results.csv");
    REQUIRE(results.size() == 5);
    CHECK(results[0] ==
          "sweep_parameter,sweep_value,scheme,status,sum_rate,rate_bob_1,rate_bob_2,total_power,"
          "leakage_ratio_eve_1,leakage_ratio_eve_2,worst_eve_rate_eve_1,worst_eve_rate_eve_2,"
          "secure_probability,secure_probability_in_disc,trials,seed,iterations,wall_time");
    CHECK(results[1].rfind("kappa,", 0) == 0);

    const auto traj = lines(dir / "trajectory.csv");
    CHECK(traj[0] == "sweep_parameter,sweep_value,scheme,iteration,sum_rate");
    CHECK(traj.size() > 4);

    const auto bp = lines(dir / "beampattern_proposed.csv");
    CHECK(bp[0] == "x,y,gain");
    CHECK(bp.size() == 1 + 6 * 5);
    CHECK(fs::exists(dir / "beampattern_non_robust.csv"));

    const ScenarioConfig echo = load_config((dir / "config_echo.json").string());
    CHECK(echo == tiny());
    fs::remove_all(dir);
}

TEST_CASE("identical configs give identical numeric output", "[runner]")
{
    const fs::path a = scratch("nfsec_runner_a");
    const fs::path b = scratch("nfsec_runner_b");
    RunOptions oa, ob;
    oa.out_dir = a.string();
    ob.out_dir = b.string();
    ob.workers = 3;
    run(tiny(), oa);
    run(tiny(), ob);
    CHECK(numeric_content(a / "results.csv") == numeric_content(b / "results.csv"));
    CHECK(lines(a / "trajectory.csv") == lines(b / "trajectory.csv"));
    CHECK(lines(a / "beampattern_proposed.csv") == lines(b / "beampattern_proposed.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("numbers are formatted with nine significant digits", "[runner]")
{
    CHECK(format_number(1.0) == "1.00000000e+00");
    CHECK(format_number(-0.000123456789) == "-1.23456789e-04");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("runner evaluation reports consistent metrics", "[runner]")
{
    ScenarioConfig c = tiny();
    c.sweep.reset();
    c.schemes = {Scheme::proposed};
    RunOptions o;
    o.write_files = false;
    const RunSummary s = run(c, o);
    REQUIRE(s.points.size() == 1);
    const PointResult &p = s.points[0];
    REQUIRE_FALSE(p.failed());
    CHECK(p.eval.sum_rate > 0.0);
    CHECK(p.eval.total_power <= c.p_max * (1.0 + 1e-6));
    CHECK(p.eval.leakage_ratio.size() == 2);
    CHECK(p.eval.secure.trials == c.trials);
}
