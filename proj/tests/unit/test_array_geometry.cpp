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
#include <complex>
#include <random>
#include <stdexcept>

#include "nfsec/array_geometry.hpp"

using namespace nfsec;

namespace
{
    constexpr double kLambda = kSpeedOfLight / 30e9;
}

TEST_CASE("antenna coordinates are centered with half-wavelength spacing", "[array_geometry]")
{
    const auto u = antenna_coords(4, 0.01);
    REQUIRE(u.size() == 4);
    CHECK(u[0] == Catch::Approx(-0.0075).margin(1e-15));
    CHECK(u[1] == Catch::Approx(-0.0025).margin(1e-15));
    CHECK(u[2] == Catch::Approx(0.0025).margin(1e-15));
    CHECK(u[3] == Catch::Approx(0.0075).margin(1e-15));

    const ArrayGeometry geo(257, 0.01);
    const auto &c = geo.element_coords();
    CHECK(c(128) == Catch::Approx(0.0).margin(1e-15));
    for (Eigen::Index i = 1; i < c.size(); ++i)
        CHECK(c(i) - c(i - 1) == Catch::Approx(geo.spacing()).epsilon(1e-12));
}

TEST_CASE("polar conversions round-trip and reject points behind the array", "[array_geometry]")
{
    const PolarLocation p = cart_to_polar({10.0, 0.5});
    CHECK(p.range() == Catch::Approx(std::sqrt(100.25)));
    CHECK(p.angle() == Catch::Approx(std::atan(0.05)));
    const CartesianPoint q = p.to_cartesian();
    CHECK(q.x == Catch::Approx(10.0));
    CHECK(q.y == Catch::Approx(0.5));

    CHECK_THROWS_AS(cart_to_polar({0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(cart_to_polar({-1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PolarLocation(0.1, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(PolarLocation(kPi / 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("steering vector entries follow the Fresnel phase law", "[array_geometry]")
{
    const ArrayGeometry geo(4, kLambda);
    const double theta = 0.3;
    const double r = 2.0;
    const SteeringVector a = steering_vector(PolarLocation(theta, r), geo);
    const double k = 2.0 * kPi / kLambda;
    for (int n = 1; n <= 4; ++n)
    {
        const double u = (2.0 * n - 5.0) * kLambda / 4.0;
        const double phase = k * (u * std::sin(theta) - u * u * std::cos(theta) * std::cos(theta) / (2.0 * r));
        const std::complex<double> expected = std::polar(0.5, phase);
        CHECK(std::abs(a[static_cast<std::size_t>(n - 1)] - expected) < 1e-12);
    }
}

TEST_CASE("steering vectors have unit norm and constant magnitude", "[array_geometry][property]")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-1.4, 1.4);
    std::uniform_real_distribution<double> range(0.5, 200.0);
    std::uniform_int_distribution<int> count(1, 512);
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto n = static_cast<std::size_t>(count(rng));
        const ArrayGeometry geo(n, kLambda);
        const SteeringVector a = steering_vector(PolarLocation(angle(rng), range(rng)), geo);
        REQUIRE(a.size() == n);
        CHECK(std::abs(a.entries().norm() - 1.0) < 1e-12);
        const double amp = 1.0 / std::sqrt(static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(std::abs(a[i]) - amp) < 1e-12);
    }
}

TEST_CASE("exact and Fresnel responses converge with range", "[array_geometry]")
{
    const ArrayGeometry geo(64, kLambda);
    const double theta = 0.2;
    double previous = 2.0;
    for (double r : {5.0, 20.0, 80.0, 320.0})
    {
        const PolarLocation p(theta, r);
        const double err = (steering_vector(p, geo).entries() - steering_vector_exact(p.to_cartesian(), geo).entries())
                               .norm();
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 1e-3);
}

TEST_CASE("steering_inner matches the materialized product", "[array_geometry]")
{
    const ArrayGeometry geo(33, kLambda);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    Eigen::VectorXcd w(33);
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w(i) = {g(rng), g(rng)};
    const PolarLocation p(-0.4, 7.5);
    const std::complex<double> direct = steering_vector(p, geo).entries().dot(w);
    CHECK(std::abs(steering_inner(geo, p.angle(), p.range(), w) - direct) < 1e-12);
}

TEST_CASE("line-of-sight channel scales with the reference gain and range", "[array_geometry]")
{
    const ArrayGeometry geo(16, kLambda);
    const double h0 = free_space_reference_gain(kLambda);
    CHECK(h0 == Catch::Approx(std::pow(kLambda / (4.0 * kPi), 2)));
    const LosChannel ch = los_channel({20.0, 0.0}, h0, geo);
    CHECK(std::abs(ch.gain) == Catch::Approx(std::sqrt(h0) / 20.0));
    // Beamforming along the steering vector yields the full array gain
    const Eigen::VectorXcd w = ch.steering.entries();
    CHECK(std::norm(ch.response(w)) == Catch::Approx(16.0 * h0 / 400.0));
}

TEST_CASE("array construction rejects invalid parameters", "[array_geometry]")
{
    CHECK_THROWS_AS(ArrayGeometry(0, kLambda), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry(8, 0.0), std::invalid_argument);
    const ArrayGeometry g = ArrayGeometry::from_frequency(8, 30e9);
    CHECK(g.wavelength() == Catch::Approx(kLambda));
}
