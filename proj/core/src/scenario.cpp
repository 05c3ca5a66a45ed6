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

#include "nfsec/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace nfsec
{
    Scenario::Scenario(ArrayGeometry geometry, std::vector<CartesianPoint> bobs, std::vector<EveEstimate> eves,
                       double alpha, double p_max, double rate_max, double noise_power,
                       std::optional<double> reference_gain, double kappa)
        : geometry_(std::move(geometry)), bobs_(std::move(bobs)), eves_(std::move(eves)), alpha_(alpha), p_max_(p_max),
          rate_max_(rate_max), noise_power_(noise_power),
          reference_gain_(reference_gain ? *reference_gain : free_space_reference_gain(geometry_.wavelength())),
          kappa_(kappa)
    {
        if (bobs_.empty())
            throw std::invalid_argument("Scenario: at least one Bob is required");
        if (!(p_max_ > 0.0))
            throw std::invalid_argument("Scenario: p_max must be positive");
        if (!(rate_max_ > 0.0))
            throw std::invalid_argument("Scenario: r_max must be positive");
        if (!(noise_power_ > 0.0))
            throw std::invalid_argument("Scenario: noise power must be positive");
        if (!(reference_gain_ > 0.0))
            throw std::invalid_argument("Scenario: h0 must be positive");
        if (!(kappa_ >= 0.0 && kappa_ < 1.0))
            throw std::invalid_argument("Scenario: kappa must lie in [0, 1)");
        if (!(alpha_ > 0.0 && alpha_ < 1.0))
            throw std::invalid_argument("Scenario: alpha must lie in (0, 1)");

        for (std::size_t k = 0; k < bobs_.size(); ++k)
        {
            if (!(bobs_[k].x > 0.0))
                throw std::invalid_argument("Scenario: Bob " + std::to_string(k) + " must have x > 0");
            bob_channels_.push_back(los_channel(bobs_[k], reference_gain_, geometry_));
        }
        for (std::size_t m = 0; m < eves_.size(); ++m)
        {
            if (!(eves_[m].position.x > 0.0))
                throw std::invalid_argument("Scenario: Eve " + std::to_string(m) + " must have x > 0");
            if (!(eves_[m].sigma >= 0.0))
                throw std::invalid_argument("Scenario: Eve " + std::to_string(m) + " sigma must be non-negative");
            uncertainties_.emplace_back(eves_[m].position, eves_[m].sigma, alpha_);
            const double r_hat = uncertainties_.back().center_polar().range();
            thresholds_.push_back(leakage_threshold(noise_power_, rate_max_, geometry_.element_count(),
                                                    reference_gain_ / (r_hat * r_hat)));
        }
    }

    Scenario Scenario::with_kappa(double kappa) const
    {
        return Scenario(geometry_, bobs_, eves_, alpha_, p_max_, rate_max_, noise_power_, reference_gain_, kappa);
    }

    Scenario Scenario::with_sigma(double sigma) const
    {
        std::vector<EveEstimate> eves = eves_;
        for (auto &e : eves)
            e.sigma = sigma;
        return Scenario(geometry_, bobs_, eves, alpha_, p_max_, rate_max_, noise_power_, reference_gain_, kappa_);
    }

    std::string to_string(Scheme scheme)
    {
        switch (scheme)
        {
        case Scheme::non_robust:
            return "non_robust";
        case Scheme::sampling:
            return "sampling";
        case Scheme::error_bound:
            return "error_bound";
        case Scheme::partition_only:
            return "partition_only";
        case Scheme::refined_only:
            return "refined_only";
        case Scheme::proposed:
            return "proposed";
        }
        return "unknown";
    }

    Scheme parse_scheme(const std::string &name)
    {
        for (Scheme s : all_schemes())
            if (to_string(s) == name)
                return s;
        throw std::invalid_argument("unknown scheme '" + name +
                                    "' (expected non_robust, sampling, error_bound, partition_only, refined_only, "
                                    "proposed or all)");
    }

    const std::vector<Scheme> &all_schemes()
    {
        static const std::vector<Scheme> schemes{Scheme::non_robust,     Scheme::sampling,     Scheme::error_bound,
                                                 Scheme::partition_only, Scheme::refined_only, Scheme::proposed};
        return schemes;
    }

} // namespace nfsec
