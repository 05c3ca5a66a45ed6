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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "nfsec/config.hpp"

using namespace nfsec;

namespace
{
    const std::string kMinimal = R"({
        "frequency_ghz": 30, "elements": 64,
        "bobs": [[50, 2.5], [50, -2.5]], "eves": [[10, 0.5], [10, -0.5]],
        "sigma": 0.1, "alpha": 0.05, "p_max": 1, "r_max": 1, "noise_dbm": -60
    })";

    std::string without(const std::string &field)
    {
        const std::string v = "\"" + field + "\"";
        std::string text = kMinimal;
        const auto pos = text.find(v);
        return text.replace(pos, v.size(), "\"unused_" + field + "\"");
    }
}

TEST_CASE("unit conversions", "[config]")
{
    CHECK(dbm_to_watts(-60.0) == Catch::Approx(1e-9));
    CHECK(dbm_to_watts(30.0) == Catch::Approx(1.0));
    CHECK(wavelength_from_ghz(30.0) == Catch::Approx(0.00999308193333).epsilon(1e-9));
}

TEST_CASE("minimal configuration fills defaults", "[config]")
{
    const ScenarioConfig c = parse_config(kMinimal);
    CHECK(c.elements == 64);
    REQUIRE(c.sigma.size() == 2);
    CHECK(c.sigma[1] == 0.1);
    CHECK(c.schemes == std::vector<Scheme>{Scheme::proposed});
    CHECK(c.trials == 10000);
    CHECK(c.kappa == 0.0);
    CHECK_FALSE(c.h0);
    CHECK_FALSE(c.sweep);

    const Scenario s = make_scenario(c);
    CHECK(s.noise_power() == Catch::Approx(1e-9));
    CHECK(s.geometry().element_count() == 64);
    CHECK(s.reference_gain() == Catch::Approx(free_space_reference_gain(wavelength_from_ghz(30.0))));
}

TEST_CASE("missing required fields are named", "[config]")
{
    const auto field = GENERATE(as<std::string>{}, "frequency_ghz", "elements", "bobs", "eves", "sigma", "alpha",
                                "p_max", "r_max", "noise_dbm");
    try
    {
        parse_config(without(field));
        FAIL("expected a ConfigError");
    }
    catch (const ConfigError &e)
    {
        CHECK(e.field() == field);
    }
}

TEST_CASE("invalid values are rejected with the field name", "[config]")
{
    auto expect_field = [](ScenarioConfig c, const std::string &field) {
        try
        {
            validate(c);
            FAIL("expected a ConfigError for " + field);
        }
        catch (const ConfigError &e)
        {
            CHECK(e.field() == field);
        }
    };
    ScenarioConfig base;
    {
        ScenarioConfig c = base;
        c.alpha = 1.5;
        expect_field(c, "alpha");
    }
    {
        ScenarioConfig c = base;
        c.kappa = 1.0;
        expect_field(c, "kappa");
    }
    {
        ScenarioConfig c = base;
        c.sigma = {0.1};
        expect_field(c, "sigma");
    }
    {
        ScenarioConfig c = base;
        c.sweep = SweepSpec{"colour", {1.0}};
        expect_field(c, "sweep.parameter");
    }
    CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("scheme selection accepts a name, a list or all", "[config]")
{
    std::string text = kMinimal;
    text.insert(text.rfind('}'), R"(, "schemes": "all")");
    CHECK(parse_config(text).schemes == all_schemes());

    text = kMinimal;
    text.insert(text.rfind('}'), R"(, "schemes": ["sampling", "non_robust"])");
    CHECK(parse_config(text).schemes == std::vector<Scheme>{Scheme::sampling, Scheme::non_robust});

    text = kMinimal;
    text.insert(text.rfind('}'), R"(, "schemes": "bogus")");
    CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("echo round-trips through JSON", "[config][property]")
{
    ScenarioConfig c = parse_config(kMinimal);
    c.h0 = 1e-6;
    c.kappa = 0.2;
    c.epsilon = 0.3;
    c.schemes = {Scheme::sampling, Scheme::proposed};
    c.seed = 99;
    c.sweep = SweepSpec{"sigma", {0.01, 0.05, 0.1}};
    c.beampattern.nx = 17;
    c.solver.max_iterations = 80;
    const ScenarioConfig back = parse_config(to_json(c));
    CHECK(back == c);

    const auto path = std::filesystem::temp_directory_path() / "nfsec_config_roundtrip.json";
    {
        std::ofstream f(path);
        f << to_json(c);
    }
    CHECK(load_config(path.string()) == c);
    std::filesystem::remove(path);
}

TEST_CASE("sweep values and the ci preset", "[config]")
{
    const ScenarioConfig c = parse_config(kMinimal);
    CHECK(with_sweep_value(c, "sigma", 0.05).sigma == std::vector<double>{0.05, 0.05});
    CHECK(with_sweep_value(c, "kappa", 0.3).kappa == 0.3);
    CHECK(with_sweep_value(c, "elements", 128).elements == 128);
    CHECK(with_sweep_value(c, "noise_dbm", -70).noise_dbm == -70.0);
    CHECK(with_sweep_value(c, "epsilon", 0.4).epsilon.value() == 0.4);
    CHECK_THROWS_AS(with_sweep_value(c, "elements", 12.5), ConfigError);
    CHECK_THROWS_AS(with_sweep_value(c, "colour", 1.0), ConfigError);

    ScenarioConfig ci;
    apply_ci_preset(ci);
    CHECK(ci.elements == 64);
    CHECK(ci.trials == 2000);
    CHECK(ci.grid == 200);
    const SchemeOptions o = make_scheme_options(ci);
    CHECK(o.error_grid == 200);
    CHECK(o.sampling_count == ci.sampling_count);
}
