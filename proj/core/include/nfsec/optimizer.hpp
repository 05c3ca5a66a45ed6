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

#ifndef NFSEC_OPTIMIZER_HPP
#define NFSEC_OPTIMIZER_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nfsec/conic.hpp"
#include "nfsec/robust_lmi.hpp"
#include "nfsec/scenario.hpp"

namespace nfsec
{
    using Beamformers = std::vector<Eigen::VectorXcd>;

    struct SchemeOptions
    {
        std::size_t sampling_count = 100;  // sampled angles per Eve
        std::size_t error_grid = 400;      // disc maximization of the CSV error (error_bound)
        std::size_t cell_error_grid = 200; // per-cell maximization (partition_only)
        int max_iterations = 50;
        double tolerance = 1e-4;           // absolute sum-rate change [bit/s/Hz]
        double bisection_tolerance = 1e-6;
        conic::SolverSettings solver;
        LmiOptions lmi;
        std::optional<double> epsilon_override; // replaces the computed error bound of error_bound
    };

    enum class ReportStatus
    {
        optimal,
        infeasible,
        max_iterations,
        solver_failure
    };

    std::string to_string(ReportStatus status);

    struct SolveReport
    {
        Scheme scheme = Scheme::proposed;
        Beamformers beamformers;
        ReportStatus status = ReportStatus::solver_failure;
        std::vector<double> trajectory; // true sum-rate, starting with the initial point
        int iterations = 0;             // accepted SCA iterations
        double wall_time = 0.0;         // [s]
        std::optional<int> failed_iteration;
        int inaccurate_solves = 0;      // stalled solves whose best iterate passed the feasibility check
        std::string message;
        double initial_scale = 0.0;
        std::size_t secrecy_constraints = 0;
        std::vector<std::vector<double>> error_bounds; // per Eve, per modeled region
        conic::SolverSettings solver;
    };

    // One worst-case leakage requirement on every beamformer, for one Eve
    struct SecrecyConstraint
    {
        enum class Kind
        {
            point, // |a^H w| <= sqrt(T)
            ball,  // |a^H w| + eps ||w|| <= sqrt(T)
            box    // refined first-order model
        };

        Kind kind = Kind::point;
        std::size_t eve = 0;
        Eigen::VectorXcd steering;
        double epsilon = 0.0;
        std::optional<RefinedCellModel> cell;
    };

    struct SecrecyModel
    {
        std::vector<SecrecyConstraint> constraints;
    };

    SecrecyModel build_secrecy_model(const Scenario &scenario, Scheme scheme, const SchemeOptions &options = {});

    // Closed-form margin sqrt(T) - worst modeled amplitude with T = gamma - kappa^2 ||w||^2
    double secrecy_margin(const SecrecyConstraint &c, const Scenario &scenario, const Eigen::VectorXcd &w);
    double min_secrecy_margin(const SecrecyModel &model, const Scenario &scenario, const Beamformers &w);

    // Maximum-ratio beams with equal power split, scaled by the largest bisection factor that satisfies the model
    struct Initialization
    {
        Beamformers beamformers;
        double scale = 0.0;
    };

    Initialization initialize_beamformers(const Scenario &scenario, const SecrecyModel &model,
                                          double tolerance = 1e-6);

    // |h^H w|^2 ~ |h^H w0|^2 + 2 Re{w0^H h h^H (w - w0)}
    struct SingleSurrogate
    {
        std::complex<double> iota; // h^H w0
        Eigen::VectorXcd h;

        double value(const Eigen::VectorXcd &w) const;
        // Gradient with respect to (Re w, Im w) stacked
        Eigen::VectorXd gradient() const;
    };

    SingleSurrogate sca_surrogate_single(const Eigen::VectorXcd &w_prev, const Eigen::VectorXcd &h);

    // Concave lower bound of each Bob rate: constant + Re{b^H w_k} - c sum_i |h_k^H w_i|^2 (in bit/s/Hz)
    struct MultiSurrogateTerm
    {
        double constant;
        Eigen::VectorXcd linear;  // b
        double quadratic;         // c >= 0
    };

    struct MultiSurrogate
    {
        std::vector<MultiSurrogateTerm> terms;
        std::vector<Eigen::VectorXcd> channels;
        double noise_power = 1.0;

        std::vector<double> rates(const Beamformers &w) const;
        double sum(const Beamformers &w) const;
    };

    MultiSurrogate sca_surrogate_multi(const Beamformers &w_prev, const std::vector<Eigen::VectorXcd> &channels,
                                       double noise_power);

    SolveReport solve_scheme(const Scenario &scenario, Scheme scheme, const SchemeOptions &options = {});

} // namespace nfsec

#endif
