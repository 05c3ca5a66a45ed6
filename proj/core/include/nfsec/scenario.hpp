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

#ifndef NFSEC_SCENARIO_HPP
#define NFSEC_SCENARIO_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nfsec/array_geometry.hpp"
#include "nfsec/robust_lmi.hpp"
#include "nfsec/uncertainty.hpp"

namespace nfsec
{
    struct EveEstimate
    {
        CartesianPoint position; // estimated location [m]
        double sigma;            // per-axis location error std [m]
    };

    // Full problem instance. All quantities in SI units (watts, meters).
    class Scenario
    {
    public:
        // Throws std::invalid_argument on any invalid physical parameter
        Scenario(ArrayGeometry geometry, std::vector<CartesianPoint> bobs, std::vector<EveEstimate> eves, double alpha,
                 double p_max, double rate_max, double noise_power, std::optional<double> reference_gain = std::nullopt,
                 double kappa = 0.0);

        const ArrayGeometry &geometry() const noexcept { return geometry_; }
        const std::vector<CartesianPoint> &bobs() const noexcept { return bobs_; }
        const std::vector<EveEstimate> &eves() const noexcept { return eves_; }
        std::size_t bob_count() const noexcept { return bobs_.size(); }
        std::size_t eve_count() const noexcept { return eves_.size(); }
        double alpha() const noexcept { return alpha_; }
        double p_max() const noexcept { return p_max_; }
        double rate_max() const noexcept { return rate_max_; }
        double noise_power() const noexcept { return noise_power_; }
        double reference_gain() const noexcept { return reference_gain_; }
        double kappa() const noexcept { return kappa_; }

        const std::vector<LocationUncertainty> &uncertainties() const noexcept { return uncertainties_; }
        const std::vector<LosChannel> &bob_channels() const noexcept { return bob_channels_; }

        // Threshold of Eve m, with the channel amplitude evaluated at the estimated range
        const LeakageThreshold &threshold(std::size_t eve) const { return thresholds_.at(eve); }

        // Copy with a different NLoS ratio or location error
        Scenario with_kappa(double kappa) const;
        Scenario with_sigma(double sigma) const;

    private:
        ArrayGeometry geometry_;
        std::vector<CartesianPoint> bobs_;
        std::vector<EveEstimate> eves_;
        double alpha_;
        double p_max_;
        double rate_max_;
        double noise_power_;
        double reference_gain_;
        double kappa_;

        std::vector<LocationUncertainty> uncertainties_;
        std::vector<LosChannel> bob_channels_;
        std::vector<LeakageThreshold> thresholds_;
    };

    enum class Scheme
    {
        non_robust,
        sampling,
        error_bound,
        partition_only,
        refined_only,
        proposed
    };

    std::string to_string(Scheme scheme);
    // Throws std::invalid_argument for unknown names
    Scheme parse_scheme(const std::string &name);
    const std::vector<Scheme> &all_schemes();

} // namespace nfsec

#endif
