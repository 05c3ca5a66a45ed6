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

#ifndef NFSEC_CONFIG_HPP
#define NFSEC_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfsec/array_geometry.hpp"
#include "nfsec/optimizer.hpp"
#include "nfsec/scenario.hpp"

namespace nfsec
{
    // Invalid or unreadable configuration; `field` names the offending entry
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(std::string field, const std::string &what)
            : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field))
        {
        }
        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    struct SweepSpec
    {
        std::string parameter; // sigma | kappa | p_max | r_max | noise_dbm | elements | epsilon
        std::vector<double> values;

        bool operator==(const SweepSpec &) const = default;
    };

    struct BeamPatternSpec
    {
        double x_min = 1.0;
        double x_max = 60.0;
        double y_min = -10.0;
        double y_max = 10.0;
        std::size_t nx = 200;
        std::size_t ny = 200;

        bool operator==(const BeamPatternSpec &) const = default;
    };

    struct ScenarioConfig
    {
        double frequency_ghz = 30.0;
        std::size_t elements = 256;
        std::vector<CartesianPoint> bobs{{50.0, 2.5}, {50.0, -2.5}};
        std::vector<CartesianPoint> eves{{10.0, 0.5}, {10.0, -0.5}};
        std::vector<double> sigma{0.1, 0.1};
        double alpha = 0.05;
        double p_max = 1.0;      // [W]
        double r_max = 1.0;      // [bit/s/Hz]
        double noise_dbm = -60.0;
        std::optional<double> h0;
        double kappa = 0.0;
        std::optional<double> epsilon; // error-bound override for the error_bound scheme
        std::vector<Scheme> schemes{Scheme::proposed};
        std::size_t sampling_count = 100;
        std::size_t trials = 10000;
        std::uint64_t seed = 1;
        std::size_t grid = 400;  // dense-grid resolution per axis
        std::optional<SweepSpec> sweep;
        BeamPatternSpec beampattern;
        int sca_max_iterations = 50;
        double sca_tolerance = 1e-4;
        conic::SolverSettings solver;

        bool operator==(const ScenarioConfig &other) const;
    };

    // Unit conversions
    double dbm_to_watts(double dbm) noexcept;
    // Wavelength of a carrier given in GHz
    double wavelength_from_ghz(double ghz) noexcept;

    // Throws ConfigError on read, parse or validation failure
    ScenarioConfig load_config(const std::string &path);
    ScenarioConfig parse_config(const std::string &json_text);

    // Throws ConfigError naming the first invalid field
    void validate(const ScenarioConfig &config);

    // Fully resolved JSON document; parse_config(to_json(c)) == c
    std::string to_json(const ScenarioConfig &config);

    // Desk-scale preset: N = 64, 2000 trials, 200 x 200 grids
    void apply_ci_preset(ScenarioConfig &config);

    // Copy with one sweep parameter set (throws ConfigError for unknown parameters)
    ScenarioConfig with_sweep_value(const ScenarioConfig &config, const std::string &parameter, double value);

    Scenario make_scenario(const ScenarioConfig &config);
    SchemeOptions make_scheme_options(const ScenarioConfig &config);

} // namespace nfsec

#endif
