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

#include <Eigen/Eigenvalues>

#include "nfsec/robust_lmi.hpp"

using namespace nfsec;
using namespace nfsec::conic;

namespace
{
    constexpr double kLambda = kSpeedOfLight / 30e9;

    Eigen::VectorXcd random_complex(std::size_t n, std::mt19937_64 &rng)
    {
        std::normal_distribution<double> g;
        Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < v.size(); ++i)
            v(i) = {g(rng), g(rng)};
        return v;
    }

    std::vector<LinearExpr> stacked(const ComplexVector &w)
    {
        std::vector<LinearExpr> out;
        for (std::size_t n = 0; n < w.size; ++n)
            out.push_back(LinearExpr::variable(w.re(n)));
        for (std::size_t n = 0; n < w.size; ++n)
            out.push_back(LinearExpr::variable(w.im(n)));
        return out;
    }

    // |v^H w| <= t as a cone constraint on a fresh variable t
    std::size_t amplitude_bound(ConicProgram &p, const ComplexVector &w, const Eigen::VectorXcd &v)
    {
        const std::size_t t = p.add_scalar();
        const ComplexExpr e = w.inner(v);
        p.add_soc(LinearExpr::variable(t), {e.re, e.im});
        return t;
    }
}

TEST_CASE("leakage threshold and the necessary power cap", "[robust_lmi]")
{
    const LeakageThreshold t = leakage_threshold(1e-9, 1.0, 64, 1e-8);
    CHECK(t.gamma == Catch::Approx(1e-9 * 1.0 / (64.0 * 1e-8)));
    CHECK_THROWS_AS(leakage_threshold(0.0, 1.0, 64, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(leakage_threshold(1e-9, 1.0, 0, 1e-8), std::invalid_argument);

    CHECK(error_bound_power_cap(0.02, 0.5).value() == Catch::Approx(0.08));
    CHECK_FALSE(error_bound_power_cap(0.02, 0.0));
    CHECK_THROWS_AS(error_bound_power_cap(0.02, -1.0), std::invalid_argument);

    const ThresholdForm f = nlos_tightened_threshold(t, 0.2, 3);
    CHECK(f.value(2.0) == Catch::Approx(t.gamma - 0.08));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
    x(3) = 2.0;
    CHECK(f.entry().evaluate(x) == Catch::Approx(t.gamma - 0.08));
    CHECK_THROWS_AS(nlos_tightened_threshold(t, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(nlos_tightened_threshold(t, 0.0, 3), std::invalid_argument);
}

TEST_CASE("error-bound block encodes the worst case over the error ball", "[robust_lmi]")
{
    std::mt19937_64 rng(1);
    const std::size_t n = 6;
    Eigen::VectorXcd a = random_complex(n, rng);
    a.normalize();
    const double eps = 0.3;
    const double gamma = 0.05;

    // PSD block and cone form share one optimum; the optimizer sits on the margin boundary
    double objective[2] = {0.0, 0.0};
    const ErrorBoundLowering modes[2] = {ErrorBoundLowering::psd, ErrorBoundLowering::soc};
    const Eigen::VectorXcd c = random_complex(n, rng);
    for (int i = 0; i < 2; ++i)
    {
        ConicProgram p;
        const ComplexVector w = p.add_complex_vector(n);
        p.add_soc(LinearExpr(1.0), stacked(w));
        add_error_bound_constraint(p, ThresholdForm{gamma, 0.0, std::nullopt}, a, eps, w, std::nullopt, LmiOptions{modes[i], 16});
        p.set_objective(w.inner(c).re);
        const ConicSolution s = solve(p);
        REQUIRE(s.status == SolveStatus::optimal);
        objective[i] = s.objective;
        const Eigen::VectorXcd wv = w.value(s.x);
        const double margin = error_bound_margin(gamma, a, eps, wv);
        CHECK(margin > -1e-6);
        CHECK(margin < 1e-4);

        // Sampled perturbations of norm eps never exceed the threshold
        for (int k = 0; k < 200; ++k)
        {
            Eigen::VectorXcd e = random_complex(n, rng);
            e *= eps / e.norm();
            CHECK(std::norm((a + e).dot(wv)) <= gamma * (1.0 + 1e-5));
        }
    }
    CHECK(objective[0] == Catch::Approx(objective[1]).epsilon(1e-5));
}

TEST_CASE("error-bound PSD block is PSD exactly when the margin is non-negative", "[robust_lmi][property]")
{
    std::mt19937_64 rng(17);
    const std::size_t n = 4;
    for (int trial = 0; trial < 40; ++trial)
    {
        Eigen::VectorXcd a = random_complex(n, rng);
        a.normalize();
        Eigen::VectorXcd wv = random_complex(n, rng);
        wv *= 0.2 / wv.norm();
        const double eps = 0.25;
        const double gamma = std::norm(std::abs(a.dot(wv)) + eps * wv.norm()) * (trial % 2 ? 1.05 : 0.95);

        ConicProgram p;
        const ComplexVector w = p.add_complex_vector(n);
        const std::size_t lambda = p.add_scalar();
        const HermitianLmi m = build_error_bound_lmi(ThresholdForm{gamma, 0.0, std::nullopt}, a, eps, w, lambda);
        REQUIRE(m.size() == n + 2);

        // Best multiplier by a fine scan of the closed-form PSD test
        Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.variable_count()));
        for (std::size_t i = 0; i < n; ++i)
        {
            x(static_cast<Eigen::Index>(w.re(i))) = wv(static_cast<Eigen::Index>(i)).real();
            x(static_cast<Eigen::Index>(w.im(i))) = wv(static_cast<Eigen::Index>(i)).imag();
        }
        double best = -1e300;
        for (int k = 1; k < 4000; ++k)
        {
            x(static_cast<Eigen::Index>(lambda)) = gamma * k / 4000.0;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.evaluate(x));
            best = std::max(best, es.eigenvalues().minCoeff());
        }
        const double margin = error_bound_margin(gamma, a, eps, wv);
        if (margin > 0.0)
            CHECK(best >= -1e-12);
        else
            CHECK(best < 0.0);
    }
}

TEST_CASE("refined block matches its cone-form worst case", "[robust_lmi]")
{
    const ArrayGeometry geo(8, kLambda);
    const LocationUncertainty u({10.0, 0.5}, 0.1, 0.05);
    const auto cells = partition_region(u, 8);
    REQUIRE(!cells.empty());
    const RefinedCellModel cell = refined_cell_model(cells.front(), geo);
    const double gamma = 0.01;
    std::mt19937_64 rng(6);
    const Eigen::VectorXcd c = random_complex(8, rng);

    ConicProgram lmi;
    const ComplexVector w1 = lmi.add_complex_vector(8);
    lmi.add_soc(LinearExpr(1.0), stacked(w1));
    add_refined_constraint(lmi, ThresholdForm{gamma, 0.0, std::nullopt}, cell, w1);
    lmi.set_objective(w1.inner(c).re);
    const ConicSolution s1 = solve(lmi);
    REQUIRE(s1.status == SolveStatus::optimal);

    // |a^H w| + rho |g_r^H w| + th |g_t^H w| <= sqrt(gamma)
    ConicProgram cone;
    const ComplexVector w2 = cone.add_complex_vector(8);
    cone.add_soc(LinearExpr(1.0), stacked(w2));
    const std::size_t t0 = amplitude_bound(cone, w2, cell.steering);
    const std::size_t tr = amplitude_bound(cone, w2, cell.grad_range);
    const std::size_t tt = amplitude_bound(cone, w2, cell.grad_theta);
    cone.add_nonneg(LinearExpr(std::sqrt(gamma)) - LinearExpr::variable(t0) -
                    LinearExpr::variable(tr, cell.range_half_width) - LinearExpr::variable(tt, cell.angle_half_width));
    cone.set_objective(w2.inner(c).re);
    const ConicSolution s2 = solve(cone);
    REQUIRE(s2.status == SolveStatus::optimal);

    CHECK(s1.objective == Catch::Approx(s2.objective).epsilon(1e-5));
    const Eigen::VectorXcd wv = w1.value(s1.x);
    CHECK(refined_margin(gamma, cell, wv) > -1e-6);

    // The modeled first-order box never exceeds the threshold
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int k = 0; k < 500; ++k)
    {
        const Eigen::VectorXcd am = cell.steering + cell.grad_range * (unit(rng) * cell.range_half_width) +
                                    cell.grad_theta * (unit(rng) * cell.angle_half_width);
        CHECK(std::norm(am.dot(wv)) <= gamma * (1.0 + 1e-5));
    }
}

TEST_CASE("NLoS threshold tightens the feasible power", "[robust_lmi]")
{
    const ArrayGeometry geo(8, kLambda);
    const LocationUncertainty u({10.0, 0.5}, 0.1, 0.05);
    const RefinedCellModel cell = refined_disc_model(u, geo);
    const double gamma = 0.02;
    std::mt19937_64 rng(10);
    const Eigen::VectorXcd c = random_complex(8, rng);

    double previous = 1e300;
    for (double kappa : {0.0, 0.3, 0.6})
    {
        ConicProgram p;
        const ComplexVector w = p.add_complex_vector(8);
        const std::size_t pw = p.add_scalar();
        p.add_rotated_soc(LinearExpr::variable(pw), LinearExpr(1.0), stacked(w));
        p.add_nonneg(LinearExpr(1.0) - LinearExpr::variable(pw));
        add_refined_constraint(p, ThresholdForm{gamma, kappa, pw}, cell, w);
        p.set_objective(w.inner(c).re);
        const ConicSolution s = solve(p);
        REQUIRE(s.status == SolveStatus::optimal);
        const Eigen::VectorXcd wv = w.value(s.x);
        CHECK(refined_margin(gamma - kappa * kappa * wv.squaredNorm(), cell, wv) > -1e-6);
        CHECK(s.objective < previous);
        previous = s.objective;
    }
}

TEST_CASE("multiuser blocks enumerate every Eve, Bob and cell", "[robust_lmi]")
{
    const ArrayGeometry geo(16, kLambda);
    const LocationUncertainty u1({10.0, 0.5}, 0.1, 0.05);
    const LocationUncertainty u2({10.0, -0.5}, 0.1, 0.05);
    const std::vector<std::vector<FanSubRegion>> cells{partition_region(u1, 16), partition_region(u2, 16)};
    const auto blocks = build_multiuser_lmis(cells, 2, geo);
    CHECK(blocks.size() == 2 * (cells[0].size() + cells[1].size()));
    for (const auto &b : blocks)
    {
        CHECK(b.eve < 2);
        CHECK(b.bob < 2);
        CHECK(b.cell < cells[b.eve].size());
    }
}
