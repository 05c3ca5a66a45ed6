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

#include "nfsec/robust_lmi.hpp"

#include <cmath>
#include <stdexcept>

#include "nfsec/csv_error.hpp"

namespace nfsec
{
    using conic::ComplexExpr;
    using conic::ComplexVector;
    using conic::HermitianLmi;
    using conic::LinearExpr;

    LeakageThreshold leakage_threshold(double noise_power, double rate_max, std::size_t element_count,
                                       double eve_gain_sq)
    {
        if (!(noise_power > 0.0) || !(rate_max > 0.0) || element_count == 0 || !(eve_gain_sq > 0.0))
            throw std::invalid_argument("leakage_threshold: noise power, rate, element count and gain must be positive");
        const double gamma =
            noise_power * (std::exp2(rate_max) - 1.0) / (static_cast<double>(element_count) * eve_gain_sq);
        return {gamma, noise_power, rate_max, element_count, eve_gain_sq};
    }

    std::optional<double> error_bound_power_cap(double gamma, double eps)
    {
        if (eps < 0.0)
            throw std::invalid_argument("error_bound_power_cap: error bound must be non-negative");
        if (eps == 0.0)
            return std::nullopt;
        return gamma / (eps * eps);
    }

    LinearExpr ThresholdForm::entry() const
    {
        LinearExpr e(gamma);
        if (kappa != 0.0)
        {
            if (!power_var)
                throw std::logic_error("ThresholdForm: NLoS threshold requires a power variable");
            e.add_term(*power_var, -kappa * kappa);
        }
        return e;
    }

    ThresholdForm nlos_tightened_threshold(const LeakageThreshold &base, double kappa, std::size_t power_var)
    {
        if (!(kappa > 0.0 && kappa < 1.0))
            throw std::invalid_argument("nlos_tightened_threshold: kappa must lie in (0, 1)");
        return ThresholdForm{base.gamma, kappa, power_var};
    }

    RefinedCellModel refined_cell_model(const FanSubRegion &cell, const ArrayGeometry &geo)
    {
        const PolarLocation s = cell.surrogate();
        CsvGradients g = csv_gradients(s, geo);
        return {s,
                steering_vector(s, geo).entries(),
                std::move(g.grad_range),
                std::move(g.grad_theta),
                cell.range_half_width,
                cell.angle_half_width};
    }

    RefinedCellModel refined_disc_model(const LocationUncertainty &u, const ArrayGeometry &geo)
    {
        const PolarLocation s = u.center_polar();
        const PolarErrorBounds b = polar_error_bounds(u);
        CsvGradients g = csv_gradients(s, geo);
        return {s, steering_vector(s, geo).entries(), std::move(g.grad_range), std::move(g.grad_theta),
                b.max_range_error, b.max_angle_error};
    }

    HermitianLmi build_error_bound_lmi(const ThresholdForm &threshold, const Eigen::VectorXcd &a_hat, double eps,
                                       const ComplexVector &w, std::size_t lambda_var)
    {
        if (eps < 0.0)
            throw std::invalid_argument("build_error_bound_lmi: error bound must be non-negative");
        if (static_cast<std::size_t>(a_hat.size()) != w.size)
            throw std::invalid_argument("build_error_bound_lmi: dimension mismatch");
        const std::size_t n = w.size;
        HermitianLmi m(n + 2);
        m.add(0, 0, threshold.entry() - LinearExpr::variable(lambda_var));
        m.add(0, 1, w.inner(a_hat)); // a^H w
        m.add(1, 1, LinearExpr(1.0));
        for (std::size_t i = 0; i < n; ++i)
        {
            // entry (2 + i, 1) = eps w_i
            ComplexExpr wi{LinearExpr::variable(w.re(i), eps), LinearExpr::variable(w.im(i), eps)};
            m.add(2 + i, 1, wi);
            m.add(2 + i, 2 + i, LinearExpr::variable(lambda_var));
        }
        return m;
    }

    HermitianLmi build_refined_lmi(const ThresholdForm &threshold, const RefinedCellModel &cell,
                                   const ComplexVector &w, std::size_t lambda_range, std::size_t lambda_angle)
    {
        if (static_cast<std::size_t>(cell.steering.size()) != w.size)
            throw std::invalid_argument("build_refined_lmi: dimension mismatch");
        HermitianLmi m(4);
        m.add(0, 0, threshold.entry());
        m.add(1, 0, w.inner(cell.steering));
        m.add(1, 1, LinearExpr(1.0) - LinearExpr::variable(lambda_range) - LinearExpr::variable(lambda_angle));
        ComplexExpr gr = w.inner(cell.grad_range);
        gr *= cell.range_half_width;
        ComplexExpr gt = w.inner(cell.grad_theta);
        gt *= cell.angle_half_width;
        m.add(2, 0, gr);
        m.add(3, 0, gt);
        m.add(2, 2, LinearExpr::variable(lambda_range));
        m.add(3, 3, LinearExpr::variable(lambda_angle));
        return m;
    }

    double error_bound_margin(double threshold_value, const Eigen::VectorXcd &a_hat, double eps,
                              const Eigen::VectorXcd &w)
    {
        return std::sqrt(std::max(0.0, threshold_value)) - (std::abs(a_hat.dot(w)) + eps * w.norm());
    }

    double refined_margin(double threshold_value, const RefinedCellModel &cell, const Eigen::VectorXcd &w)
    {
        const double worst = std::abs(cell.steering.dot(w)) + cell.range_half_width * std::abs(cell.grad_range.dot(w)) +
                             cell.angle_half_width * std::abs(cell.grad_theta.dot(w));
        return std::sqrt(std::max(0.0, threshold_value)) - worst;
    }

    namespace
    {
        std::vector<LinearExpr> stacked(const ComplexVector &w)
        {
            std::vector<LinearExpr> x;
            x.reserve(2 * w.size);
            for (std::size_t i = 0; i < w.size; ++i)
            {
                x.push_back(LinearExpr::variable(w.re(i)));
                x.push_back(LinearExpr::variable(w.im(i)));
            }
            return x;
        }
    } // namespace

    void add_error_bound_constraint(conic::ConicProgram &program, const ThresholdForm &threshold,
                                    const Eigen::VectorXcd &a_hat, double eps, const ComplexVector &w,
                                    std::optional<std::size_t> norm_var, const LmiOptions &options)
    {
        bool use_psd = false;
        switch (options.lowering)
        {
        case ErrorBoundLowering::psd:
            use_psd = true;
            break;
        case ErrorBoundLowering::soc:
            use_psd = false;
            break;
        case ErrorBoundLowering::automatic:
            use_psd = w.size <= options.psd_max_elements;
            break;
        }

        if (use_psd)
        {
            const std::size_t lambda = program.add_scalar();
            program.add_lmi(build_error_bound_lmi(threshold, a_hat, eps, w, lambda));
            return;
        }

        // Equivalent cone form: t >= |a^H w|, u >= ||w||, ||(t + eps u, kappa u)|| <= sqrt(gamma)
        std::size_t u = 0;
        if (norm_var)
            u = *norm_var;
        else
        {
            u = program.add_scalar();
            program.add_soc(LinearExpr::variable(u), stacked(w));
        }
        const std::size_t t = program.add_scalar();
        const ComplexExpr c = w.inner(a_hat);
        program.add_soc(LinearExpr::variable(t), {c.re, c.im});
        const LinearExpr lhs = LinearExpr::variable(t) + LinearExpr::variable(u, eps);
        const double root = std::sqrt(threshold.gamma);
        if (threshold.kappa == 0.0)
            program.add_nonneg(LinearExpr(root) - lhs);
        else
            program.add_soc(LinearExpr(root), {lhs, LinearExpr::variable(u, threshold.kappa)});
    }

    void add_refined_constraint(conic::ConicProgram &program, const ThresholdForm &threshold,
                                const RefinedCellModel &cell, const ComplexVector &w)
    {
        const std::size_t lr = program.add_scalar();
        const std::size_t lt = program.add_scalar();
        program.add_lmi(build_refined_lmi(threshold, cell, w, lr, lt));
    }

    std::vector<MultiuserBlock> build_multiuser_lmis(const std::vector<std::vector<FanSubRegion>> &cells_per_eve,
                                                     std::size_t bob_count, const ArrayGeometry &geo)
    {
        std::vector<MultiuserBlock> blocks;
        for (std::size_t m = 0; m < cells_per_eve.size(); ++m)
        {
            std::vector<RefinedCellModel> models;
            models.reserve(cells_per_eve[m].size());
            for (const auto &cell : cells_per_eve[m])
                models.push_back(refined_cell_model(cell, geo));
            for (std::size_t k = 0; k < bob_count; ++k)
                for (std::size_t s = 0; s < models.size(); ++s)
                    blocks.push_back({m, k, s, models[s]});
        }
        return blocks;
    }

    void add_multiuser_constraints(conic::ConicProgram &program, const std::vector<MultiuserBlock> &blocks,
                                   const std::vector<std::vector<ThresholdForm>> &thresholds,
                                   const std::vector<ComplexVector> &beamformers)
    {
        for (const auto &b : blocks)
            add_refined_constraint(program, thresholds.at(b.eve).at(b.bob), b.model, beamformers.at(b.bob));
    }

} // namespace nfsec
