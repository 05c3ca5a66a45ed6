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
#include <random>
#include <stdexcept>

#include "nfsec/uncertainty.hpp"

using namespace nfsec;

TEST_CASE("confidence radius of the isotropic Gaussian disc", "[uncertainty]")
{
    CHECK(confidence_radius(0.1, 0.05) == Catch::Approx(0.1 * std::sqrt(2.0 * std::log(20.0))));
    CHECK(confidence_radius(0.0, 0.05) == 0.0);
    CHECK_THROWS_AS(confidence_radius(0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(confidence_radius(0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(confidence_radius(-0.1, 0.5), std::invalid_argument);

    // Monte-Carlo coverage of the disc matches 1 - alpha
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 0.1);
    const double radius = confidence_radius(0.1, 0.05);
    int inside = 0;
    const int trials = 200000;
    for (int i = 0; i < trials; ++i)
        inside += std::hypot(g(rng), g(rng)) <= radius;
    CHECK(static_cast<double>(inside) / trials == Catch::Approx(0.95).margin(3e-3));
}

TEST_CASE("disc span, chords and polar error bounds", "[uncertainty]")
{
    const LocationUncertainty u({10.0, 0.5}, 0.1, 0.05);
    const double r_hat = std::hypot(10.0, 0.5);
    const double theta_hat = std::atan2(0.5, 10.0);
    const double radius = u.radius();

    const auto [lb, ub] = u.angle_span();
    CHECK(lb == Catch::Approx(theta_hat - std::asin(radius / r_hat)));
    CHECK(ub == Catch::Approx(theta_hat + std::asin(radius / r_hat)));

    const auto chord = ray_chord(u, theta_hat);
    REQUIRE(chord);
    CHECK(chord->min == Catch::Approx(r_hat - radius));
    CHECK(chord->max == Catch::Approx(r_hat + radius));
    CHECK_FALSE(ray_chord(u, ub + 1e-3));

    const auto all = sector_range_interval(u, lb, ub);
    REQUIRE(all);
    CHECK(all->min == Catch::Approx(r_hat - radius));
    CHECK(all->max == Catch::Approx(r_hat + radius));

    const PolarErrorBounds b = polar_error_bounds(u);
    CHECK(b.max_angle_error == Catch::Approx(std::asin(radius / r_hat)));
    CHECK(b.max_range_error == Catch::Approx(radius));

    CHECK_THROWS_AS(LocationUncertainty({0.1, 0.0}, 1.0, 0.05), std::invalid_argument);
}

TEST_CASE("chord endpoints lie on the disc boundary", "[uncertainty][property]")
{
    const LocationUncertainty u({8.0, -2.0}, 0.3, 0.1);
    const auto [lb, ub] = u.angle_span();
    for (int i = 1; i < 50; ++i)
    {
        const double a = lb + (ub - lb) * i / 50.0;
        const auto chord = ray_chord(u, a);
        REQUIRE(chord);
        for (double r : {chord->min, chord->max})
        {
            const double d = std::hypot(r * std::cos(a) - 8.0, r * std::sin(a) + 2.0);
            CHECK(d == Catch::Approx(u.radius()).epsilon(1e-9));
        }
    }
}

TEST_CASE("the evaluation instance splits into 13 cells per Eve", "[uncertainty]")
{
    const auto y = GENERATE(0.5, -0.5);
    const LocationUncertainty u({10.0, y}, 0.1, 0.05);
    CHECK(partition_half_count(u, 256) == 6);
    CHECK(partition_region(u, 256).size() == 13);
}

TEST_CASE("partition cells cover the disc and respect the sine budget", "[uncertainty][property]")
{
    const auto n = GENERATE(std::size_t{16}, std::size_t{64}, std::size_t{256});
    const auto center = GENERATE(CartesianPoint{10.0, 0.5}, CartesianPoint{6.0, -3.0}, CartesianPoint{20.0, 8.0});
    const LocationUncertainty u(center, 0.15, 0.05);
    const auto cells = partition_region(u, n);
    REQUIRE_FALSE(cells.empty());

    for (const auto &c : cells)
    {
        CHECK(std::sin(c.angle_max) - std::sin(c.angle_min) <= 1.0 / static_cast<double>(n) + 1e-12);
        CHECK(c.contains(c.surrogate_angle, c.surrogate_range));
        CHECK(c.range_min <= c.range_max);
    }
    for (std::size_t i = 1; i < cells.size(); ++i)
        CHECK(cells[i].angle_min == Catch::Approx(cells[i - 1].angle_max).margin(1e-14));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    int misses = 0;
    for (int i = 0; i < 20000;)
    {
        const double dx = unit(rng) * u.radius();
        const double dy = unit(rng) * u.radius();
        if (std::hypot(dx, dy) > u.radius())
            continue;
        ++i;
        const PolarLocation p = cart_to_polar({center.x + dx, center.y + dy});
        bool covered = false;
        for (const auto &c : cells)
            covered = covered || c.contains(p.angle(), p.range());
        misses += !covered;
    }
    CHECK(misses == 0);
}

TEST_CASE("a zero-radius disc yields one degenerate cell", "[uncertainty]")
{
    const LocationUncertainty u({10.0, 0.5}, 0.0, 0.05);
    const auto cells = partition_region(u, 64);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].angle_half_width == 0.0);
    CHECK(cells[0].range_half_width == 0.0);
    CHECK(cells[0].surrogate_range == Catch::Approx(std::hypot(10.0, 0.5)));
}
