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

#include "nfsec/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "nfsec/uncertainty.hpp"

namespace nfsec
{
    using json = nlohmann::json;

    namespace
    {
        bool same_points(const std::vector<CartesianPoint> &a, const std::vector<CartesianPoint> &b)
        {
            if (a.size() != b.size())
                return false;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i].x != b[i].x || a[i].y != b[i].y)
                    return false;
            return true;
        }

        bool same_solver(const conic::SolverSettings &a, const conic::SolverSettings &b)
        {
            return a.max_iterations == b.max_iterations && a.feasibility_tolerance == b.feasibility_tolerance &&
                   a.absolute_tolerance == b.absolute_tolerance && a.relative_tolerance == b.relative_tolerance &&
                   a.step_fraction == b.step_fraction;
        }
    } // namespace

    bool ScenarioConfig::operator==(const ScenarioConfig &o) const
    {
        return frequency_ghz == o.frequency_ghz && elements == o.elements && same_points(bobs, o.bobs) &&
               same_points(eves, o.eves) && sigma == o.sigma && alpha == o.alpha && p_max == o.p_max &&
               r_max == o.r_max && noise_dbm == o.noise_dbm && h0 == o.h0 && kappa == o.kappa &&
               epsilon == o.epsilon && schemes == o.schemes && sampling_count == o.sampling_count &&
               trials == o.trials && seed == o.seed && grid == o.grid && sweep == o.sweep &&
               beampattern == o.beampattern && sca_max_iterations == o.sca_max_iterations &&
               sca_tolerance == o.sca_tolerance && same_solver(solver, o.solver);
    }

    double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, dbm / 10.0) * 1e-3; }

    double wavelength_from_ghz(double ghz) noexcept { return kSpeedOfLight / (ghz * 1e9); }

    namespace
    {
        const json &require(const json &j, const char *key)
        {
            if (!j.contains(key))
                throw ConfigError(key, "required field is missing");
            return j.at(key);
        }

        double number(const json &j, const std::string &field)
        {
            if (!j.is_number())
                throw ConfigError(field, "expected a number");
            return j.get<double>();
        }

        std::uint64_t unsigned_integer(const json &j, const std::string &field)
        {
            if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
                throw ConfigError(field, "expected a non-negative integer");
            return j.get<std::uint64_t>();
        }

        std::vector<CartesianPoint> points(const json &j, const std::string &field)
        {
            if (!j.is_array())
                throw ConfigError(field, "expected a list of [x, y] pairs");
            std::vector<CartesianPoint> out;
            for (std::size_t i = 0; i < j.size(); ++i)
            {
                const json &p = j[i];
                const std::string name = field + "[" + std::to_string(i) + "]";
                if (!p.is_array() || p.size() != 2)
                    throw ConfigError(name, "expected an [x, y] pair");
                out.push_back({number(p[0], name), number(p[1], name)});
            }
            return out;
        }

        std::vector<Scheme> schemes(const json &j)
        {
            auto one = [](const std::string &name) -> std::vector<Scheme> {
                if (name == "all")
                    return all_schemes();
                try
                {
                    return {parse_scheme(name)};
                }
                catch (const std::invalid_argument &e)
                {
                    throw ConfigError("schemes", e.what());
                }
            };
            if (j.is_string())
                return one(j.get<std::string>());
            if (!j.is_array() || j.empty())
                throw ConfigError("schemes", "expected a scheme name, \"all\" or a non-empty list");
            std::vector<Scheme> out;
            for (const auto &e : j)
            {
                if (!e.is_string())
                    throw ConfigError("schemes", "expected scheme names");
                for (Scheme s : one(e.get<std::string>()))
                    if (std::find(out.begin(), out.end(), s) == out.end())
                        out.push_back(s);
            }
            return out;
        }

        template <class F>
        void optional_field(const json &j, const char *key, F &&apply)
        {
            if (j.contains(key) && !j.at(key).is_null())
                apply(j.at(key));
        }
    } // namespace

    ScenarioConfig parse_config(const std::string &json_text)
    {
        json j;
        try
        {
            j = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError("", std::string("JSON parse error: ") + e.what());
        }
        if (!j.is_object())
            throw ConfigError("", "top-level JSON value must be an object");

        ScenarioConfig c;
        c.frequency_ghz = number(require(j, "frequency_ghz"), "frequency_ghz");
        c.elements = unsigned_integer(require(j, "elements"), "elements");
        c.bobs = points(require(j, "bobs"), "bobs");
        c.eves = points(require(j, "eves"), "eves");
        const json &sig = require(j, "sigma");
        if (sig.is_number())
            c.sigma.assign(c.eves.size(), sig.get<double>());
        else if (sig.is_array())
        {
            c.sigma.clear();
            for (std::size_t i = 0; i < sig.size(); ++i)
                c.sigma.push_back(number(sig[i], "sigma[" + std::to_string(i) + "]"));
        }
        else
            throw ConfigError("sigma", "expected a number or a list with one entry per Eve");
        c.alpha = number(require(j, "alpha"), "alpha");
        c.p_max = number(require(j, "p_max"), "p_max");
        c.r_max = number(require(j, "r_max"), "r_max");
        c.noise_dbm = number(require(j, "noise_dbm"), "noise_dbm");

        optional_field(j, "h0", [&](const json &v) { c.h0 = number(v, "h0"); });
        optional_field(j, "kappa", [&](const json &v) { c.kappa = number(v, "kappa"); });
        optional_field(j, "epsilon", [&](const json &v) { c.epsilon = number(v, "epsilon"); });
        if (j.contains("schemes"))
            c.schemes = schemes(j.at("schemes"));
        else if (j.contains("scheme"))
            c.schemes = schemes(j.at("scheme"));
        optional_field(j, "sampling_count",
                       [&](const json &v) { c.sampling_count = unsigned_integer(v, "sampling_count"); });
        optional_field(j, "trials", [&](const json &v) { c.trials = unsigned_integer(v, "trials"); });
        optional_field(j, "seed", [&](const json &v) { c.seed = unsigned_integer(v, "seed"); });
        optional_field(j, "grid", [&](const json &v) { c.grid = unsigned_integer(v, "grid"); });
        optional_field(j, "sweep", [&](const json &v) {
            if (!v.is_object())
                throw ConfigError("sweep", "expected an object with parameter and values");
            SweepSpec s;
            const json &p = require(v, "parameter");
            if (!p.is_string())
                throw ConfigError("sweep.parameter", "expected a string");
            s.parameter = p.get<std::string>();
            const json &vals = require(v, "values");
            if (!vals.is_array() || vals.empty())
                throw ConfigError("sweep.values", "expected a non-empty list of numbers");
            for (const auto &x : vals)
                s.values.push_back(number(x, "sweep.values"));
            c.sweep = s;
        });
        optional_field(j, "beampattern", [&](const json &v) {
            if (!v.is_object())
                throw ConfigError("beampattern", "expected an object");
            optional_field(v, "x_min", [&](const json &x) { c.beampattern.x_min = number(x, "beampattern.x_min"); });
            optional_field(v, "x_max", [&](const json &x) { c.beampattern.x_max = number(x, "beampattern.x_max"); });
            optional_field(v, "y_min", [&](const json &x) { c.beampattern.y_min = number(x, "beampattern.y_min"); });
            optional_field(v, "y_max", [&](const json &x) { c.beampattern.y_max = number(x, "beampattern.y_max"); });
            optional_field(v, "nx", [&](const json &x) { c.beampattern.nx = unsigned_integer(x, "beampattern.nx"); });
            optional_field(v, "ny", [&](const json &x) { c.beampattern.ny = unsigned_integer(x, "beampattern.ny"); });
        });
        optional_field(j, "sca", [&](const json &v) {
            optional_field(v, "max_iterations", [&](const json &x) {
                c.sca_max_iterations = static_cast<int>(unsigned_integer(x, "sca.max_iterations"));
            });
            optional_field(v, "tolerance", [&](const json &x) { c.sca_tolerance = number(x, "sca.tolerance"); });
        });
        optional_field(j, "solver", [&](const json &v) {
            optional_field(v, "max_iterations", [&](const json &x) {
                c.solver.max_iterations = static_cast<int>(unsigned_integer(x, "solver.max_iterations"));
            });
            optional_field(v, "feasibility_tolerance", [&](const json &x) {
                c.solver.feasibility_tolerance = number(x, "solver.feasibility_tolerance");
            });
            optional_field(v, "absolute_tolerance", [&](const json &x) {
                c.solver.absolute_tolerance = number(x, "solver.absolute_tolerance");
            });
            optional_field(v, "relative_tolerance", [&](const json &x) {
                c.solver.relative_tolerance = number(x, "solver.relative_tolerance");
            });
            optional_field(v, "step_fraction",
                           [&](const json &x) { c.solver.step_fraction = number(x, "solver.step_fraction"); });
        });

        validate(c);
        return c;
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("", "cannot open config file '" + path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        return parse_config(text.str());
    }

    void validate(const ScenarioConfig &c)
    {
        auto positive = [](double v, const char *field) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError(field, "must be positive");
        };
        positive(c.frequency_ghz, "frequency_ghz");
        if (c.elements < 2)
            throw ConfigError("elements", "at least two antennas are required");
        if (c.bobs.empty())
            throw ConfigError("bobs", "at least one Bob is required");
        for (std::size_t i = 0; i < c.bobs.size(); ++i)
            if (!(c.bobs[i].x > 0.0))
                throw ConfigError("bobs[" + std::to_string(i) + "]", "x must be positive");
        for (std::size_t i = 0; i < c.eves.size(); ++i)
            if (!(c.eves[i].x > 0.0))
                throw ConfigError("eves[" + std::to_string(i) + "]", "x must be positive");
        if (c.sigma.size() != c.eves.size())
            throw ConfigError("sigma", "one entry per Eve is required");
        if (!(c.alpha > 0.0 && c.alpha < 1.0))
            throw ConfigError("alpha", "must lie in (0, 1)");
        for (std::size_t i = 0; i < c.sigma.size(); ++i)
        {
            const std::string field = "sigma[" + std::to_string(i) + "]";
            if (!(c.sigma[i] >= 0.0))
                throw ConfigError(field, "must be non-negative");
            const double range = std::hypot(c.eves[i].x, c.eves[i].y);
            if (!(confidence_radius(c.sigma[i], c.alpha) < range))
                throw ConfigError(field, "confidence radius must be smaller than the Eve's estimated range");
        }
        positive(c.p_max, "p_max");
        positive(c.r_max, "r_max");
        if (!std::isfinite(c.noise_dbm))
            throw ConfigError("noise_dbm", "must be finite");
        if (c.h0)
            positive(*c.h0, "h0");
        if (!(c.kappa >= 0.0 && c.kappa < 1.0))
            throw ConfigError("kappa", "must lie in [0, 1)");
        if (c.epsilon && !(*c.epsilon >= 0.0))
            throw ConfigError("epsilon", "must be non-negative");
        if (c.schemes.empty())
            throw ConfigError("schemes", "at least one scheme is required");
        if (c.sampling_count == 0)
            throw ConfigError("sampling_count", "must be positive");
        if (c.trials == 0)
            throw ConfigError("trials", "must be positive");
        if (c.grid < 2)
            throw ConfigError("grid", "must be at least 2");
        if (c.sweep)
        {
            static const std::vector<std::string> known{"sigma", "kappa", "p_max", "r_max",
                                                        "noise_dbm", "elements", "epsilon"};
            if (std::find(known.begin(), known.end(), c.sweep->parameter) == known.end())
                throw ConfigError("sweep.parameter", "unknown parameter '" + c.sweep->parameter + "'");
            if (c.sweep->values.empty())
                throw ConfigError("sweep.values", "must not be empty");
            for (double v : c.sweep->values)
                validate(with_sweep_value(c, c.sweep->parameter, v));
        }
        const BeamPatternSpec &b = c.beampattern;
        if (!(b.x_min > 0.0) || b.x_max < b.x_min || b.y_max < b.y_min || b.nx == 0 || b.ny == 0)
            throw ConfigError("beampattern", "grid must lie in x > 0 with positive size");
        if (c.sca_max_iterations < 1)
            throw ConfigError("sca.max_iterations", "must be positive");
        positive(c.sca_tolerance, "sca.tolerance");
        if (c.solver.max_iterations < 1)
            throw ConfigError("solver.max_iterations", "must be positive");
        positive(c.solver.feasibility_tolerance, "solver.feasibility_tolerance");
        positive(c.solver.absolute_tolerance, "solver.absolute_tolerance");
        positive(c.solver.relative_tolerance, "solver.relative_tolerance");
        if (!(c.solver.step_fraction > 0.0 && c.solver.step_fraction < 1.0))
            throw ConfigError("solver.step_fraction", "must lie in (0, 1)");
    }

    std::string to_json(const ScenarioConfig &c)
    {
        json j;
        j["frequency_ghz"] = c.frequency_ghz;
        j["elements"] = c.elements;
        j["bobs"] = json::array();
        for (const auto &p : c.bobs)
            j["bobs"].push_back({p.x, p.y});
        j["eves"] = json::array();
        for (const auto &p : c.eves)
            j["eves"].push_back({p.x, p.y});
        j["sigma"] = c.sigma;
        j["alpha"] = c.alpha;
        j["p_max"] = c.p_max;
        j["r_max"] = c.r_max;
        j["noise_dbm"] = c.noise_dbm;
        j["h0"] = c.h0 ? json(*c.h0) : json(nullptr);
        j["kappa"] = c.kappa;
        j["epsilon"] = c.epsilon ? json(*c.epsilon) : json(nullptr);
        j["schemes"] = json::array();
        for (Scheme s : c.schemes)
            j["schemes"].push_back(to_string(s));
        j["sampling_count"] = c.sampling_count;
        j["trials"] = c.trials;
        j["seed"] = c.seed;
        j["grid"] = c.grid;
        if (c.sweep)
            j["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}};
        else
            j["sweep"] = nullptr;
        j["beampattern"] = {{"x_min", c.beampattern.x_min}, {"x_max", c.beampattern.x_max},
                            {"y_min", c.beampattern.y_min}, {"y_max", c.beampattern.y_max},
                            {"nx", c.beampattern.nx},       {"ny", c.beampattern.ny}};
        j["sca"] = {{"max_iterations", c.sca_max_iterations}, {"tolerance", c.sca_tolerance}};
        j["solver"] = {{"max_iterations", c.solver.max_iterations},
                       {"feasibility_tolerance", c.solver.feasibility_tolerance},
                       {"absolute_tolerance", c.solver.absolute_tolerance},
                       {"relative_tolerance", c.solver.relative_tolerance},
                       {"step_fraction", c.solver.step_fraction}};
        // Derived quantities, ignored on load
        j["derived"] = {{"wavelength_m", wavelength_from_ghz(c.frequency_ghz)},
                        {"noise_power_w", dbm_to_watts(c.noise_dbm)},
                        {"h0", c.h0 ? *c.h0 : free_space_reference_gain(wavelength_from_ghz(c.frequency_ghz))}};
        return j.dump(2) + "\n";
    }

    void apply_ci_preset(ScenarioConfig &config)
    {
        config.elements = 64;
        config.trials = 2000;
        config.grid = 200;
        config.beampattern.nx = 200;
        config.beampattern.ny = 200;
    }

    ScenarioConfig with_sweep_value(const ScenarioConfig &config, const std::string &parameter, double value)
    {
        ScenarioConfig c = config;
        if (parameter == "sigma")
            c.sigma.assign(c.eves.size(), value);
        else if (parameter == "kappa")
            c.kappa = value;
        else if (parameter == "p_max")
            c.p_max = value;
        else if (parameter == "r_max")
            c.r_max = value;
        else if (parameter == "noise_dbm")
            c.noise_dbm = value;
        else if (parameter == "elements")
        {
            if (!(value >= 2.0) || value != std::floor(value))
                throw ConfigError("sweep.values", "elements must be integers of at least 2");
            c.elements = static_cast<std::size_t>(value);
        }
        else if (parameter == "epsilon")
            c.epsilon = value;
        else
            throw ConfigError("sweep.parameter", "unknown parameter '" + parameter + "'");
        c.sweep.reset();
        return c;
    }

    Scenario make_scenario(const ScenarioConfig &c)
    {
        std::vector<EveEstimate> eves;
        for (std::size_t m = 0; m < c.eves.size(); ++m)
            eves.push_back({c.eves[m], c.sigma[m]});
        return Scenario(ArrayGeometry(c.elements, wavelength_from_ghz(c.frequency_ghz)), c.bobs, eves, c.alpha,
                        c.p_max, c.r_max, dbm_to_watts(c.noise_dbm), c.h0, c.kappa);
    }

    SchemeOptions make_scheme_options(const ScenarioConfig &c)
    {
        SchemeOptions o;
        o.sampling_count = c.sampling_count;
        o.error_grid = c.grid;
        o.cell_error_grid = std::min<std::size_t>(c.grid, 200);
        o.max_iterations = c.sca_max_iterations;
        o.tolerance = c.sca_tolerance;
        o.solver = c.solver;
        o.epsilon_override = c.epsilon;
        return o;
    }

} // namespace nfsec
