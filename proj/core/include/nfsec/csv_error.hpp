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

#ifndef NFSEC_CSV_ERROR_HPP
#define NFSEC_CSV_ERROR_HPP

#include <cstddef>

#include <Eigen/Dense>

#include "nfsec/array_geometry.hpp"
#include "nfsec/uncertainty.hpp"

namespace nfsec
{
    // Steering-vector error ||a(p1) - a(p2)|| = sqrt(2 - 2 Re{a(p1)^H a(p2)})
    double csv_error_exact(const PolarLocation &p1, const PolarLocation &p2, const ArrayGeometry &geo);

    struct FresnelIntegrals
    {
        double c; // integral of cos(pi t^2 / 2) over [0, beta]
        double s; // integral of sin(pi t^2 / 2) over [0, beta]
    };

    // Adaptive Gauss-Kronrod quadrature, absolute error below 1e-9. Throws for beta < 0.
    FresnelIntegrals fresnel_cs(double beta);

    struct ErrorLaw
    {
        double value;      // error predicted by the closed form
        double linearized; // first-order approximation in the offset
    };

    // Range-only error law for an eavesdropper at (theta_hat, r) when the estimate is (theta_hat, r_hat).
    // value = sqrt(2 - 2 C(beta) / beta), linearized = f_r(theta_hat, r_hat) * |r - r_hat|
    ErrorLaw range_error_law(double theta_hat, double r_hat, double r, const ArrayGeometry &geo);

    // Angle-only error law at equal ranges. value = sqrt(2 - 2 varpi), linearized = f_theta(theta_hat) * |theta - theta_hat|
    ErrorLaw angle_error_law(double theta_hat, double theta, std::size_t element_count);

    // pi N^2 d^2 cos^2(theta_hat) / (2 sqrt(20) lambda r_hat^2)  [1/m]
    double range_error_slope(double theta_hat, double r_hat, const ArrayGeometry &geo);

    // pi N cos(theta_hat) / sqrt(12)  [1/rad]
    double angle_error_slope(double theta_hat, std::size_t element_count);

    // Normalized Dirichlet kernel used by the angle law: sin(N pi xi / 2) / (N sin(pi xi / 2)) for |xi| < 3/N,
    // and the first side-lobe level -1 / (N sin(3 pi / (2N))) beyond
    double dirichlet_correlation(double xi, std::size_t element_count);

    struct CsvGradients
    {
        Eigen::VectorXcd grad_theta; // da/dtheta [1/rad]
        Eigen::VectorXcd grad_range; // da/dr [1/m]
    };

    CsvGradients csv_gradients(const PolarLocation &loc, const ArrayGeometry &geo);

    // First-order model a(anchor) + grad_theta * d_theta + grad_range * d_range (not renormalized)
    Eigen::VectorXcd taylor_csv(const PolarLocation &anchor, double d_theta, double d_range, const ArrayGeometry &geo);

    // ||a(anchor + offsets) - taylor_csv(anchor, offsets)||^2
    double taylor_residual(const PolarLocation &anchor, double d_theta, double d_range, const ArrayGeometry &geo);

    // ||grad_theta|| * max_angle_error + ||grad_range|| * max_range_error
    double taylor_error_bound(const PolarLocation &anchor, double max_angle_error, double max_range_error,
                              const ArrayGeometry &geo);

    // Large-N closed forms of the gradient norms: pi N cos(theta) / sqrt(12) in angle, and
    // (pi cos^2(theta) / (lambda r^2)) sqrt(d^4 N^4 / 80) in range
    double angle_gradient_norm_closed_form(const PolarLocation &loc, const ArrayGeometry &geo);
    double range_gradient_norm_closed_form(const PolarLocation &loc, const ArrayGeometry &geo);

    struct ErrorBudget
    {
        double exact;
        double range_law;
        double angle_law;
        double range_law_linearized;
        double angle_law_linearized;
        double taylor_bound;
    };

    // All error measures between an estimate and a true location
    ErrorBudget error_budget(const PolarLocation &estimate, const PolarLocation &truth, const ArrayGeometry &geo);

    // Maximum of csv_error_exact(anchor, q) over disc points q whose angle lies in [angle_lo, angle_hi].
    // Coarse polar grid of resolution x resolution over the sector chords, then one local refinement pass.
    double max_csv_error_over_sector(const PolarLocation &anchor, const LocationUncertainty &u, double angle_lo,
                                     double angle_hi, const ArrayGeometry &geo, std::size_t resolution = 400);

    // Same over the full disc, anchored at the disc's estimate
    double max_csv_error_over_disc(const LocationUncertainty &u, const ArrayGeometry &geo,
                                   std::size_t resolution = 400);

} // namespace nfsec

#endif
