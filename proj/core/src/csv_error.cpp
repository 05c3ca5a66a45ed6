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

#include "nfsec/csv_error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace nfsec
{
    namespace
    {
        double error_from_correlation(double re_corr)
        {
            return std::sqrt(std::max(0.0, 2.0 - 2.0 * re_corr));
        }

        // 1 - C(beta)/beta by its power series, free of cancellation for small beta
        double fresnel_ratio_defect(double beta)
        {
            const double x = (kPi / 2.0) * beta * beta; // (pi/2) beta^2
            double term = 1.0;                           // x^{2n} / (2n)!
            double sum = 0.0;
            for (int n = 1; n < 40; ++n)
            {
                term *= x * x / ((2.0 * n - 1.0) * (2.0 * n));
                const double contrib = term / (4.0 * n + 1.0);
                sum += (n % 2 == 1) ? contrib : -contrib;
                if (contrib < 1e-18 * std::abs(sum))
                    break;
            }
            return sum;
        }
    } // namespace

    double csv_error_exact(const PolarLocation &p1, const PolarLocation &p2, const ArrayGeometry &geo)
    {
        const SteeringVector a1 = steering_vector(p1, geo);
        // steering_inner returns a(p2)^H a1; its real part equals Re{a1^H a(p2)}
        return error_from_correlation(steering_inner(geo, p2.angle(), p2.range(), a1.entries()).real());
    }

    FresnelIntegrals fresnel_cs(double beta)
    {
        if (!(beta >= 0.0))
            throw std::invalid_argument("fresnel_cs: beta must be non-negative");
        if (beta == 0.0)
            return {0.0, 0.0};
        using boost::math::quadrature::gauss_kronrod;
        const double c = gauss_kronrod<double, 31>::integrate([](double t) { return std::cos(kPi * t * t / 2.0); },
                                                               0.0, beta, 15, 1e-13);
        const double s = gauss_kronrod<double, 31>::integrate([](double t) { return std::sin(kPi * t * t / 2.0); },
                                                               0.0, beta, 15, 1e-13);
        return {c, s};
    }

    double range_error_slope(double theta_hat, double r_hat, const ArrayGeometry &geo)
    {
        const double n = static_cast<double>(geo.element_count());
        const double d = geo.spacing();
        const double c2 = std::cos(theta_hat) * std::cos(theta_hat);
        return kPi * n * n * d * d * c2 / (2.0 * std::sqrt(20.0) * geo.wavelength() * r_hat * r_hat);
    }

    double angle_error_slope(double theta_hat, std::size_t element_count)
    {
        return kPi * static_cast<double>(element_count) * std::cos(theta_hat) / std::sqrt(12.0);
    }

    ErrorLaw range_error_law(double theta_hat, double r_hat, double r, const ArrayGeometry &geo)
    {
        if (!(r > 0.0 && r_hat > 0.0))
            throw std::invalid_argument("range_error_law: ranges must be positive");
        const double n = static_cast<double>(geo.element_count());
        const double d = geo.spacing();
        const double c2 = std::cos(theta_hat) * std::cos(theta_hat);
        const double beta = std::sqrt(n * n * d * d * c2 / (2.0 * geo.wavelength()) * std::abs(1.0 / r - 1.0 / r_hat));

        double defect = 0.0;
        if (beta < 1.0)
            defect = fresnel_ratio_defect(beta);
        else
            defect = 1.0 - fresnel_cs(beta).c / beta;
        const double value = std::sqrt(std::max(0.0, 2.0 * defect));
        return {value, range_error_slope(theta_hat, r_hat, geo) * std::abs(r - r_hat)};
    }

    double dirichlet_correlation(double xi, std::size_t element_count)
    {
        const double n = static_cast<double>(element_count);
        const double ax = std::abs(xi);
        if (ax >= 3.0 / n)
            return -1.0 / (n * std::sin(3.0 * kPi / (2.0 * n)));
        const double den = std::sin(kPi * ax / 2.0);
        if (std::abs(den) < 1e-12)
        {
            // Taylor expansion about xi = 0
            const double z = kPi * ax / 2.0;
            return 1.0 - (n * n - 1.0) * z * z / 6.0;
        }
        return std::sin(n * kPi * ax / 2.0) / (n * den);
    }

    ErrorLaw angle_error_law(double theta_hat, double theta, std::size_t element_count)
    {
        if (element_count == 0)
            throw std::invalid_argument("angle_error_law: element count must be positive");
        const double xi = std::sin(theta) - std::sin(theta_hat);
        const double varpi = dirichlet_correlation(xi, element_count);
        return {error_from_correlation(varpi), angle_error_slope(theta_hat, element_count) * std::abs(theta - theta_hat)};
    }

    CsvGradients csv_gradients(const PolarLocation &loc, const ArrayGeometry &geo)
    {
        const SteeringVector a = steering_vector(loc, geo);
        const auto &u = geo.element_coords();
        const double k = geo.wavenumber();
        const double th = loc.angle(), r = loc.range();
        const double s = std::sin(th), c = std::cos(th);
        const std::complex<double> j(0.0, 1.0);

        const Eigen::Index n = u.size();
        CsvGradients g{Eigen::VectorXcd(n), Eigen::VectorXcd(n)};
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double un = u(i);
            g.grad_theta(i) = j * a.entries()(i) * (k * (un * c + un * un * s * c / r));
            g.grad_range(i) = j * a.entries()(i) * (kPi * un * un * c * c / (geo.wavelength() * r * r));
        }
        return g;
    }

    Eigen::VectorXcd taylor_csv(const PolarLocation &anchor, double d_theta, double d_range, const ArrayGeometry &geo)
    {
        const CsvGradients g = csv_gradients(anchor, geo);
        return steering_vector(anchor, geo).entries() + g.grad_theta * d_theta + g.grad_range * d_range;
    }

    double taylor_residual(const PolarLocation &anchor, double d_theta, double d_range, const ArrayGeometry &geo)
    {
        const PolarLocation moved(anchor.angle() + d_theta, anchor.range() + d_range);
        return (steering_vector(moved, geo).entries() - taylor_csv(anchor, d_theta, d_range, geo)).squaredNorm();
    }

    double taylor_error_bound(const PolarLocation &anchor, double max_angle_error, double max_range_error,
                              const ArrayGeometry &geo)
    {
        const CsvGradients g = csv_gradients(anchor, geo);
        return g.grad_theta.norm() * max_angle_error + g.grad_range.norm() * max_range_error;
    }

    double angle_gradient_norm_closed_form(const PolarLocation &loc, const ArrayGeometry &geo)
    {
        return angle_error_slope(loc.angle(), geo.element_count());
    }

    double range_gradient_norm_closed_form(const PolarLocation &loc, const ArrayGeometry &geo)
    {
        const double n = static_cast<double>(geo.element_count());
        const double d = geo.spacing();
        const double c = std::cos(loc.angle());
        const double r = loc.range();
        return kPi * c * c / (geo.wavelength() * r * r) * std::sqrt(d * d * d * d * n * n * n * n / 80.0);
    }

    ErrorBudget error_budget(const PolarLocation &estimate, const PolarLocation &truth, const ArrayGeometry &geo)
    {
        const ErrorLaw rl = range_error_law(estimate.angle(), estimate.range(), truth.range(), geo);
        const ErrorLaw al = angle_error_law(estimate.angle(), truth.angle(), geo.element_count());
        return {csv_error_exact(estimate, truth, geo),
                rl.value,
                al.value,
                rl.linearized,
                al.linearized,
                taylor_error_bound(estimate, std::abs(truth.angle() - estimate.angle()),
                                   std::abs(truth.range() - estimate.range()), geo)};
    }

    namespace
    {
        double lerp(double lo, double hi, std::size_t i, std::size_t count)
        {
            if (count < 2)
                return 0.5 * (lo + hi);
            return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        }

        struct GridMax
        {
            double value = 0.0;
            double angle = 0.0;
            double chord_pos = 0.0; // normalized position along the chord, [0, 1]
        };

        // Scans angles in [a_lo, a_hi] and normalized chord positions in [t_lo, t_hi]
        GridMax scan(const Eigen::VectorXcd &a_ref, const LocationUncertainty &u, const ArrayGeometry &geo, double a_lo,
                     double a_hi, double t_lo, double t_hi, std::size_t na, std::size_t nt)
        {
            GridMax best{-1.0, a_lo, t_lo};
            for (std::size_t i = 0; i < na; ++i)
            {
                const double angle = lerp(a_lo, a_hi, i, na);
                const auto chord = ray_chord(u, angle);
                if (!chord)
                    continue;
                for (std::size_t jt = 0; jt < nt; ++jt)
                {
                    const double t = lerp(t_lo, t_hi, jt, nt);
                    const double range = chord->min + t * (chord->max - chord->min);
                    const double e = error_from_correlation(steering_inner(geo, angle, range, a_ref).real());
                    if (e > best.value)
                        best = {e, angle, t};
                }
            }
            return best;
        }
    } // namespace

    double max_csv_error_over_sector(const PolarLocation &anchor, const LocationUncertainty &u, double angle_lo,
                                     double angle_hi, const ArrayGeometry &geo, std::size_t resolution)
    {
        if (resolution < 2)
            throw std::invalid_argument("max_csv_error_over_sector: resolution must be at least 2");
        const auto [span_lo, span_hi] = u.angle_span();
        const double lo = std::max(angle_lo, span_lo);
        const double hi = std::min(angle_hi, span_hi);
        if (lo > hi)
            return 0.0;

        const Eigen::VectorXcd a_ref = steering_vector(anchor, geo).entries();
        const std::size_t na = (hi > lo) ? resolution : 1;
        const GridMax coarse = scan(a_ref, u, geo, lo, hi, 0.0, 1.0, na, resolution);
        if (coarse.value < 0.0)
            return 0.0;

        const double da = (na > 1) ? (hi - lo) / static_cast<double>(na - 1) : 0.0;
        const double dt = 1.0 / static_cast<double>(resolution - 1);
        const GridMax fine = scan(a_ref, u, geo, std::max(lo, coarse.angle - da), std::min(hi, coarse.angle + da),
                                  std::max(0.0, coarse.chord_pos - dt), std::min(1.0, coarse.chord_pos + dt),
                                  (na > 1) ? 21 : 1, 21);
        return std::max(coarse.value, fine.value);
    }

    double max_csv_error_over_disc(const LocationUncertainty &u, const ArrayGeometry &geo, std::size_t resolution)
    {
        const auto [lo, hi] = u.angle_span();
        return max_csv_error_over_sector(u.center_polar(), u, lo, hi, geo, resolution);
    }

} // namespace nfsec
