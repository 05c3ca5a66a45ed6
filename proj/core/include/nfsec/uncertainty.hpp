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

#ifndef NFSEC_UNCERTAINTY_HPP
#define NFSEC_UNCERTAINTY_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nfsec/array_geometry.hpp"

namespace nfsec
{
    // Radius of the (1 - alpha) confidence disc of an isotropic 2-D Gaussian error:
    // sigma * sqrt(-2 ln alpha). Throws for alpha outside (0, 1) or sigma < 0.
    double confidence_radius(double sigma, double alpha);

    // Circular confidence region around an estimated eavesdropper position
    class LocationUncertainty
    {
    public:
        // Throws std::invalid_argument when the disc would reach the array center (radius >= estimated range)
        LocationUncertainty(CartesianPoint center, double sigma, double alpha);

        CartesianPoint center() const noexcept { return center_; }
        double sigma() const noexcept { return sigma_; }
        double alpha() const noexcept { return alpha_; }
        double radius() const noexcept { return radius_; }
        PolarLocation center_polar() const noexcept { return center_polar_; }

        // Angular span [theta_lb, theta_ub] of the disc seen from the array center
        std::pair<double, double> angle_span() const noexcept;

        // Does q lie inside the closed disc
        bool contains(CartesianPoint q) const noexcept;

    private:
        CartesianPoint center_;
        double sigma_;
        double alpha_;
        double radius_;
        PolarLocation center_polar_;
    };

    struct PolarErrorBounds
    {
        double max_angle_error; // asin(radius / r_hat) [rad]
        double max_range_error; // radius [m]
    };

    PolarErrorBounds polar_error_bounds(const LocationUncertainty &u);

    struct RangeInterval
    {
        double min; // [m]
        double max; // [m]
    };

    // Nearest and farthest range over disc points whose angle lies in [angle_lo, angle_hi].
    // The sector is clipped to the disc's angular span. Returns nullopt when the sector misses the disc.
    std::optional<RangeInterval> sector_range_interval(const LocationUncertainty &u, double angle_lo, double angle_hi);

    // Chord of the disc along the ray at `angle`: ranges [near, far]. Tangent rays give near == far.
    // Returns nullopt when the ray misses the disc.
    std::optional<RangeInterval> ray_chord(const LocationUncertainty &u, double angle);

    // One fan-shaped partition cell in the polar domain
    struct FanSubRegion
    {
        double angle_min;
        double angle_max;
        double range_min;
        double range_max;
        double surrogate_angle;
        double surrogate_range;
        double angle_half_width; // (angle_max - angle_min) / 2
        double range_half_width; // (range_max - range_min) / 2

        PolarLocation surrogate() const { return PolarLocation(surrogate_angle, surrogate_range); }
        bool contains(double angle, double range) const noexcept
        {
            return angle >= angle_min && angle <= angle_max && range >= range_min && range <= range_max;
        }
    };

    // Number of cells on the upper side of the estimate: floor(N (sin theta_ub - sin theta_hat) + 1/2)
    std::size_t partition_half_count(const LocationUncertainty &u, std::size_t element_count);

    // Splits the disc into fan-shaped cells whose sine-angle width is at most 1/N.
    // Interior cells are centered at asin(sin theta_hat + s/N); the outermost cells on each side absorb the remainder.
    // A zero-radius disc yields one degenerate cell at the estimate.
    std::vector<FanSubRegion> partition_region(const LocationUncertainty &u, std::size_t element_count);

} // namespace nfsec

#endif
