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

#include "nfsec/csv_error.hpp"

using namespace nfsec;

namespace
{
    constexpr double kLambda = kSpeedOfLight / 30e9;

    double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}

TEST_CASE("Fresnel integrals match tabulated values", "[csv_error]")
{
    // Abramowitz & Stegun, Table 7.7
    const FresnelIntegrals f1 = fresnel_cs(1.0);
    CHECK(f1.c == Catch::Approx(0.7798934004).margin(1e-9));
    CHECK(f1.s == Catch::Approx(0.4382591473).margin(1e-9));
    const FresnelIntegrals f2 = fresnel_cs(2.0);
    CHECK(f2.c == Catch::Approx(0.4882534061).margin(1e-9));
    CHECK(f2.s == Catch::Approx(0.3434156784).margin(1e-9));
    const FresnelIntegrals f0 = fresnel_cs(0.0);
    CHECK(f0.c == 0.0);
    CHECK(f0.s == 0.0);
    // Asymptote C, S -> 1/2
    const FresnelIntegrals big = fresnel_cs(200.0);
    CHECK(big.c == Catch::Approx(0.5).margin(2e-3));
    CHECK(big.s == Catch::Approx(0.5).margin(2e-3));
    CHECK_THROWS_AS(fresnel_cs(-1.0), std::invalid_argument);
}

TEST_CASE("exact CSV error is a metric on steering vectors", "[csv_error][property]")
{
    const ArrayGeometry geo(64, kLambda);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> angle(-1.0, 1.0);
    std::uniform_real_distribution<double> range(2.0, 60.0);
    for (int i = 0; i < 100; ++i)
    {
        const PolarLocation p(angle(rng), range(rng));
        const PolarLocation q(angle(rng), range(rng));
        const double e = csv_error_exact(p, q, geo);
        const double direct = (steering_vector(p, geo).entries() - steering_vector(q, geo).entries()).norm();
        CHECK(e == Catch::Approx(direct).margin(1e-12));
        CHECK(e == Catch::Approx(csv_error_exact(q, p, geo)).margin(1e-14));
        CHECK(e <= 2.0 + 1e-12);
        CHECK(csv_error_exact(p, p, geo) < 1e-7);
    }
}

TEST_CASE("range-only closed form agrees with the exact error", "[csv_error]")
{
    const auto n = GENERATE(std::size_t{64}, std::size_t{256});
    const ArrayGeometry geo(n, kLambda);
    const double r_hat = 10.0;
    for (double dr : {-1.0, -0.5, -0.1, 0.05, 0.3, 1.0})
    {
        const ErrorLaw law = range_error_law(0.0, r_hat, r_hat + dr, geo);
        const double exact = csv_error_exact(PolarLocation(0.0, r_hat), PolarLocation(0.0, r_hat + dr), geo);
        CHECK(relative(law.value, exact) < 0.02);
    }
    CHECK(range_error_law(0.0, r_hat, r_hat, geo).value == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("linearized laws use the closed-form slopes", "[csv_error]")
{
    const ArrayGeometry geo(256, kLambda);
    const double d = geo.spacing();
    CHECK(range_error_slope(0.2, 10.0, geo) ==
          Catch::Approx(kPi * 256.0 * 256.0 * d * d * std::pow(std::cos(0.2), 2) /
                        (2.0 * std::sqrt(20.0) * kLambda * 100.0)));
    CHECK(angle_error_slope(0.2, 256) == Catch::Approx(kPi * 256.0 * std::cos(0.2) / std::sqrt(12.0)));
    const ErrorLaw law = angle_error_law(0.1, 0.101, 256);
    CHECK(law.linearized == Catch::Approx(angle_error_slope(0.1, 256) * 0.001));
}

TEST_CASE("angle-only closed form agrees inside the main lobe", "[csv_error]")
{
    const std::size_t n = 256;
    const ArrayGeometry geo(n, kLambda);
    const double theta_hat = 0.05;
    for (double frac : {0.1, 0.25, 0.5})
    {
        const double theta = std::asin(std::sin(theta_hat) + frac / static_cast<double>(n));
        const ErrorLaw law = angle_error_law(theta_hat, theta, n);
        const double exact = csv_error_exact(PolarLocation(theta_hat, 30.0), PolarLocation(theta, 30.0), geo);
        CHECK(relative(law.value, exact) < 0.05);
    }
}

TEST_CASE("normalized Dirichlet kernel", "[csv_error]")
{
    CHECK(dirichlet_correlation(0.0, 64) == Catch::Approx(1.0));
    CHECK(dirichlet_correlation(2.0 / 64.0, 64) == Catch::Approx(0.0).margin(1e-12));
    CHECK(dirichlet_correlation(0.01, 64) == Catch::Approx(dirichlet_correlation(-0.01, 64)));
    const double floor = -1.0 / (64.0 * std::sin(3.0 * kPi / 128.0));
    CHECK(dirichlet_correlation(0.2, 64) == Catch::Approx(floor));
}

TEST_CASE("analytic gradients match central differences", "[csv_error][property]")
{
    const ArrayGeometry geo(128, kLambda);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> angle(-0.8, 0.8);
    std::uniform_real_distribution<double> range(4.0, 60.0);
    for (int i = 0; i < 20; ++i)
    {
        const PolarLocation p(angle(rng), range(rng));
        const CsvGradients g = csv_gradients(p, geo);
        const double ht = 1e-6;
        const double hr = 1e-5 * p.range();
        const Eigen::VectorXcd fd_theta = (steering_vector(PolarLocation(p.angle() + ht, p.range()), geo).entries() -
                                           steering_vector(PolarLocation(p.angle() - ht, p.range()), geo).entries()) /
                                          (2.0 * ht);
        const Eigen::VectorXcd fd_range = (steering_vector(PolarLocation(p.angle(), p.range() + hr), geo).entries() -
                                           steering_vector(PolarLocation(p.angle(), p.range() - hr), geo).entries()) /
                                          (2.0 * hr);
        CHECK((g.grad_theta - fd_theta).norm() / g.grad_theta.norm() < 1e-5);
        CHECK((g.grad_range - fd_range).norm() / g.grad_range.norm() < 1e-5);
    }
}

TEST_CASE("closed-form gradient norms hold for large arrays", "[csv_error]")
{
    const ArrayGeometry geo(256, kLambda);
    for (double th : {0.0, 0.05, 0.4})
    {
        const PolarLocation p(th, 10.0);
        const CsvGradients g = csv_gradients(p, geo);
        CHECK(relative(angle_gradient_norm_closed_form(p, geo), g.grad_theta.norm()) < 0.01);
        CHECK(relative(range_gradient_norm_closed_form(p, geo), g.grad_range.norm()) < 0.01);
    }
}

TEST_CASE("Taylor residual is second order in the offset", "[csv_error][property]")
{
    const ArrayGeometry geo(64, kLambda);
    const PolarLocation anchor(0.1, 12.0);
    CHECK(taylor_residual(anchor, 0.0, 0.0, geo) < 1e-20);
    const double r1 = taylor_residual(anchor, 2e-3, 0.2, geo);
    const double r2 = taylor_residual(anchor, 1e-3, 0.1, geo);
    // ||second-order remainder||^2 scales with the fourth power of the step
    CHECK(r1 / r2 == Catch::Approx(16.0).epsilon(0.1));

    const CsvGradients g = csv_gradients(anchor, geo);
    const Eigen::VectorXcd lin = taylor_csv(anchor, 2e-3, 0.2, geo) - steering_vector(anchor, geo).entries();
    CHECK(lin.norm() <= taylor_error_bound(anchor, 2e-3, 0.2, geo) + 1e-12);
    CHECK(taylor_error_bound(anchor, 2e-3, 0.2, geo) ==
          Catch::Approx(g.grad_theta.norm() * 2e-3 + g.grad_range.norm() * 0.2));
}

TEST_CASE("disc maximum dominates sampled CSV errors", "[csv_error][property]")
{
    const ArrayGeometry geo(64, kLambda);
    const LocationUncertainty u({10.0, 0.5}, 0.1, 0.05);
    const double peak = max_csv_error_over_disc(u, geo, 200);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 2000;)
    {
        const double dx = unit(rng) * u.radius();
        const double dy = unit(rng) * u.radius();
        if (std::hypot(dx, dy) > u.radius())
            continue;
        ++i;
        const double e = csv_error_exact(u.center_polar(), cart_to_polar({10.0 + dx, 0.5 + dy}), geo);
        CHECK(e <= peak * (1.0 + 1e-6));
    }
    const LocationUncertainty wider({10.0, 0.5}, 0.2, 0.05);
    CHECK(max_csv_error_over_disc(wider, geo, 200) >= peak);
    const LocationUncertainty point({10.0, 0.5}, 0.0, 0.05);
    CHECK(max_csv_error_over_disc(point, geo, 200) == Catch::Approx(0.0).margin(1e-7));
}

TEST_CASE("error budget bundles the individual measures", "[csv_error]")
{
    const ArrayGeometry geo(64, kLambda);
    const PolarLocation est(0.05, 10.0);
    const PolarLocation truth(0.052, 10.1);
    const ErrorBudget b = error_budget(est, truth, geo);
    CHECK(b.exact == Catch::Approx(csv_error_exact(est, truth, geo)));
    CHECK(b.taylor_bound == Catch::Approx(taylor_error_bound(est, 0.002, 0.1, geo)));
    CHECK(b.exact <= b.taylor_bound * 1.05);
}
