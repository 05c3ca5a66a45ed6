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

#ifndef NFSEC_ROBUST_LMI_HPP
#define NFSEC_ROBUST_LMI_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nfsec/array_geometry.hpp"
#include "nfsec/conic.hpp"
#include "nfsec/uncertainty.hpp"

namespace nfsec
{
    // Cap on the normalized leakage |a^H w|^2 that keeps the eavesdropping rate at or below rate_max
    struct LeakageThreshold
    {
        double gamma;         // sigma^2 (2^R - 1) / (N |h_E|^2)
        double noise_power;   // sigma^2 [W]
        double rate_max;      // [bit/s/Hz]
        std::size_t element_count;
        double eve_gain_sq;   // |h_E|^2
    };

    // Throws std::invalid_argument unless every input is positive
    LeakageThreshold leakage_threshold(double noise_power, double rate_max, std::size_t element_count,
                                       double eve_gain_sq);

    // Necessary power cap Gamma / eps^2 for the error-bound constraint; nullopt when eps == 0 (no cap)
    std::optional<double> error_bound_power_cap(double gamma, double eps);

    // Threshold entry of a leakage constraint. With NLoS scattering the entry becomes
    // gamma - kappa^2 p, where p >= ||w||^2 is an auxiliary variable of the beamformer.
    struct ThresholdForm
    {
        double gamma = 0.0;
        double kappa = 0.0;                    // NLoS-to-LoS amplitude ratio
        std::optional<std::size_t> power_var;  // p, required when kappa > 0

        conic::LinearExpr entry() const;       // gamma - kappa^2 p
        double value(double power) const { return gamma - kappa * kappa * power; }
    };

    // Throws unless 0 < kappa < 1
    ThresholdForm nlos_tightened_threshold(const LeakageThreshold &base, double kappa, std::size_t power_var);

    // Steering vector and gradients at the surrogate of a partition cell, with its half-widths
    struct RefinedCellModel
    {
        PolarLocation surrogate;
        Eigen::VectorXcd steering;
        Eigen::VectorXcd grad_range;
        Eigen::VectorXcd grad_theta;
        double range_half_width;
        double angle_half_width;
    };

    RefinedCellModel refined_cell_model(const FanSubRegion &cell, const ArrayGeometry &geo);

    // Full-disc model anchored at the estimate with half-widths (max angle error, radius)
    RefinedCellModel refined_disc_model(const LocationUncertainty &u, const ArrayGeometry &geo);

    // (N+2) x (N+2) block
    //   [[T - lambda, a^H w, 0], [w^H a, 1, eps w^H], [0, eps w, lambda I]] >= 0
    conic::HermitianLmi build_error_bound_lmi(const ThresholdForm &threshold, const Eigen::VectorXcd &a_hat,
                                              double eps, const conic::ComplexVector &w, std::size_t lambda_var);

    // 4 x 4 block
    //   [[T, w^H a, eps w^H g_r, th w^H g_t], [a^H w, 1 - l_r - l_t, 0, 0], [eps g_r^H w, 0, l_r, 0],
    //    [th g_t^H w, 0, 0, l_t]] >= 0
    conic::HermitianLmi build_refined_lmi(const ThresholdForm &threshold, const RefinedCellModel &cell,
                                          const conic::ComplexVector &w, std::size_t lambda_range,
                                          std::size_t lambda_angle);

    // Closed-form feasibility margins sqrt(T) - worst-case amplitude (non-negative iff the block is feasible
    // for some multipliers)
    double error_bound_margin(double threshold_value, const Eigen::VectorXcd &a_hat, double eps,
                              const Eigen::VectorXcd &w);
    double refined_margin(double threshold_value, const RefinedCellModel &cell, const Eigen::VectorXcd &w);

    // How the error-bound family enters a conic program
    enum class ErrorBoundLowering
    {
        automatic, // PSD block up to psd_max_elements antennas, equivalent cone form beyond
        psd,
        soc
    };

    struct LmiOptions
    {
        ErrorBoundLowering lowering = ErrorBoundLowering::automatic;
        std::size_t psd_max_elements = 16;
    };

    // Adds one error-bound constraint for beamformer w (allocating its multiplier).
    // `norm_var` must bound ||w|| from above when the cone form is used with kappa > 0.
    void add_error_bound_constraint(conic::ConicProgram &program, const ThresholdForm &threshold,
                                    const Eigen::VectorXcd &a_hat, double eps, const conic::ComplexVector &w,
                                    std::optional<std::size_t> norm_var, const LmiOptions &options = {});

    // Adds one refined block for beamformer w (allocating its two multipliers)
    void add_refined_constraint(conic::ConicProgram &program, const ThresholdForm &threshold,
                                const RefinedCellModel &cell, const conic::ComplexVector &w);

    // One refined block per (Eve m, Bob k, cell s)
    struct MultiuserBlock
    {
        std::size_t eve;
        std::size_t bob;
        std::size_t cell;
        RefinedCellModel model;
    };

    std::vector<MultiuserBlock> build_multiuser_lmis(const std::vector<std::vector<FanSubRegion>> &cells_per_eve,
                                                     std::size_t bob_count, const ArrayGeometry &geo);

    // Adds every block, using thresholds[m][k] for Eve m and Bob k and beamformers[k]
    void add_multiuser_constraints(conic::ConicProgram &program, const std::vector<MultiuserBlock> &blocks,
                                   const std::vector<std::vector<ThresholdForm>> &thresholds,
                                   const std::vector<conic::ComplexVector> &beamformers);

} // namespace nfsec

#endif
