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

#include "nfsec/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nfsec
{
    double confidence_radius(double sigma, double alpha)
    {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("confidence_radius: alpha must lie in (0, 1), got " + std::to_string(alpha));
        if (!(sigma >= 0.0))
            throw std::invalid_argument("confidence_radius: sigma must be non-negative");
        return sigma * std::sqrt(-2.0 * std::log(alpha));
    }

    namespace
    {
        PolarLocation checked_center(CartesianPoint center, double radius)
        {
            const PolarLocation p = cart_to_polar(center);
            if (!(radius < p.range()))
                throw std::invalid_argument("LocationUncertainty: uncertainty radius " + std::to_string(radius) +
                                            " m must be smaller than the estimated range " +
                                            std::to_string(p.range()) + " m");
            return p;
        }
    } // namespace

    LocationUncertainty::LocationUncertainty(CartesianPoint center, double sigma, double alpha)
        : center_(center), sigma_(sigma), alpha_(alpha), radius_(confidence_radius(sigma, alpha)),
          center_polar_(checked_center(center, radius_))
    {
    }

    std::pair<double, double> LocationUncertainty::angle_span() const noexcept
    {
        const double half = std::asin(radius_ / center_polar_.range());
        return {center_polar_.angle() - half, center_polar_.angle() + half};
    }

    bool LocationUncertainty::contains(CartesianPoint q) const noexcept
    {
        return std::hypot(q.x - center_.x, q.y - center_.y) <= radius_;
    }

    PolarErrorBounds polar_error_bounds(const LocationUncertainty &u)
    {
        return {std::asin(u.radius() / u.center_polar().range()), u.radius()};
    }

    std::optional<RangeInterval> ray_chord(const LocationUncertainty &u, double angle)
    {
        const CartesianPoint c = u.center();
        const double along = c.x * std::cos(angle) + c.y * std::sin(angle);  // projection of the center onto the ray
        const double across = c.x * std::sin(angle) - c.y * std::cos(angle); // signed distance from the ray
        double disc = u.radius() * u.radius() - across * across;
        const double r_hat = u.center_polar().range();
        const double tol = 64.0 * std::numeric_limits<double>::epsilon() * r_hat * r_hat;
        if (disc < 0.0)
        {
            if (disc < -tol)
                return std::nullopt;
            disc = 0.0; // tangent ray
        }
        const double half = std::sqrt(disc);
        return RangeInterval{along - half, along + half};
    }

    std::optional<RangeInterval> sector_range_interval(const LocationUncertainty &u, double angle_lo, double angle_hi)
    {
        const auto [span_lo, span_hi] = u.angle_span();
        const double lo = std::max(angle_lo, span_lo);
        const double hi = std::min(angle_hi, span_hi);
        if (lo > hi)
            return std::nullopt;

        double near = std::numeric_limits<double>::infinity();
        double far = -std::numeric_limits<double>::infinity();
        auto visit = [&](double angle)
        {
            if (const auto chord = ray_chord(u, angle))
            {
                near = std::min(near, chord->min);
                far = std::max(far, chord->max);
            }
        };
        visit(lo);
        visit(hi);
        // The near boundary is closest, and the far boundary farthest, along the ray through the center.
        const double theta_hat = u.center_polar().angle();
        if (theta_hat >= lo && theta_hat <= hi)
        {
            const double r_hat = u.center_polar().range();
            near = std::min(near, r_hat - u.radius());
            far = std::max(far, r_hat + u.radius());
        }
        if (!(near <= far))
            return std::nullopt;
        return RangeInterval{near, far};
    }

    namespace
    {
        double sine_extent_above(const LocationUncertainty &u, std::size_t n)
        {
            const auto span = u.angle_span();
            return (std::sin(span.second) - std::sin(u.center_polar().angle())) * static_cast<double>(n);
        }

        double sine_extent_below(const LocationUncertainty &u, std::size_t n)
        {
            const auto span = u.angle_span();
            return (std::sin(u.center_polar().angle()) - std::sin(span.first)) * static_cast<double>(n);
        }
    } // namespace

    std::size_t partition_half_count(const LocationUncertainty &u, std::size_t element_count)
    {
        return static_cast<std::size_t>(std::floor(sine_extent_above(u, element_count) + 0.5));
    }

    std::vector<FanSubRegion> partition_region(const LocationUncertainty &u, std::size_t element_count)
    {
        if (element_count == 0)
            throw std::invalid_argument("partition_region: element count must be positive");

        const PolarLocation c = u.center_polar();
        if (u.radius() == 0.0)
            return {FanSubRegion{c.angle(), c.angle(), c.range(), c.range(), c.angle(), c.range(), 0.0, 0.0}};

        const double n = static_cast<double>(element_count);
        const double sin_hat = std::sin(c.angle());
        const auto [theta_lb, theta_ub] = u.angle_span();
        const long s_hi = static_cast<long>(partition_half_count(u, element_count));
        const long s_lo = static_cast<long>(std::floor(sine_extent_below(u, element_count) + 0.5));

        std::vector<FanSubRegion> cells;
        cells.reserve(static_cast<std::size_t>(s_lo + s_hi + 1));
        for (long s = -s_lo; s <= s_hi; ++s)
        {
            const bool lower_edge = (s == -s_lo);
            const bool upper_edge = (s == s_hi);
            const double sd = static_cast<double>(s);
            const double a_min = lower_edge ? theta_lb : std::asin(sin_hat + (sd - 0.5) / n);
            const double a_max = upper_edge ? theta_ub : std::asin(sin_hat + (sd + 0.5) / n);
            if (!(a_max > a_min))
                continue; // empty remainder cell

            const auto ranges = sector_range_interval(u, a_min, a_max);
            if (!ranges)
                continue;

            FanSubRegion cell{};
            cell.angle_min = a_min;
            cell.angle_max = a_max;
            cell.range_min = ranges->min;
            cell.range_max = ranges->max;
            cell.surrogate_angle = (lower_edge || upper_edge) ? 0.5 * (a_min + a_max) : std::asin(sin_hat + sd / n);
            cell.surrogate_range = 0.5 * (ranges->min + ranges->max);
            cell.angle_half_width = 0.5 * (a_max - a_min);
            cell.range_half_width = 0.5 * (ranges->max - ranges->min);
            cells.push_back(cell);
        }
        return cells;
    }

} // namespace nfsec
