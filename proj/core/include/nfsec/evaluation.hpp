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

#ifndef NFSEC_EVALUATION_HPP
#define NFSEC_EVALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nfsec/array_geometry.hpp"
#include "nfsec/scenario.hpp"
#include "nfsec/uncertainty.hpp"

namespace nfsec
{
    // log2(1 + |h_k^H w_k|^2 / (sum_{i != k} |h_k^H w_i|^2 + noise))
    std::vector<double> bob_rates(const std::vector<Eigen::VectorXcd> &w, const std::vector<Eigen::VectorXcd> &channels,
                                  double noise_power);
    double sum_rate(const std::vector<Eigen::VectorXcd> &w, const std::vector<Eigen::VectorXcd> &channels,
                    double noise_power);

    // log2(1 + |h_E^H w|^2 / noise)
    double eve_rate(const Eigen::VectorXcd &w, const Eigen::VectorXcd &eve_channel, double noise_power);

    struct LeakagePeak
    {
        double value = 0.0; // max |a^H w|^2
        double angle = 0.0;
        double range = 0.0;
    };

    // Two-level grid search of |a^H w|^2 over the disc: resolution x resolution polar grid, 20 x 20 refinement.
    // Throws std::invalid_argument for resolution < 2.
    LeakagePeak worst_case_leakage(const Eigen::VectorXcd &w, const LocationUncertainty &u, const ArrayGeometry &geo,
                                   std::size_t resolution = 400);

    // Same search for several beamformers sharing one steering evaluation per grid point
    std::vector<LeakagePeak> worst_case_leakage(const std::vector<Eigen::VectorXcd> &w, const LocationUncertainty &u,
                                                const ArrayGeometry &geo, std::size_t resolution = 400);

    struct SecureProbability
    {
        double full = 0.0;    // over the unbounded Gaussian error
        double in_disc = 0.0; // over draws inside the confidence disc
        std::size_t trials = 0;
        std::size_t in_disc_trials = 0;
        std::uint64_t seed = 0;
    };

    // Fraction of draws with every eavesdropping rate at or below rate_max. With kappa > 0 the
    // bounded NLoS power kappa^2 N |h_E|^2 ||w||^2 is added to the LoS leakage.
    // `workers` = 0 uses the hardware concurrency; results do not depend on it.
    SecureProbability secure_probability(const std::vector<Eigen::VectorXcd> &w, const Scenario &scenario,
                                         std::size_t trials, std::uint64_t seed, std::size_t workers = 1);

    struct BeamPattern
    {
        std::vector<double> xs;
        std::vector<double> ys;
        std::vector<double> gain; // row-major, ys.size() rows by xs.size() columns

        double at(std::size_t iy, std::size_t ix) const { return gain.at(iy * xs.size() + ix); }
    };

    // sum_k |a^H w_k|^2 on a uniform grid (x_min > 0). With `reference_gain` set, each point is weighted by
    // N h0 / r^2.
    BeamPattern beam_pattern(const std::vector<Eigen::VectorXcd> &w, double x_min, double x_max, double y_min,
                             double y_max, std::size_t nx, std::size_t ny, const ArrayGeometry &geo,
                             std::optional<double> reference_gain = std::nullopt);

    // Per-trial seed of a counter-based stream
    std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

} // namespace nfsec

#endif
