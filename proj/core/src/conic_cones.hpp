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

// Internal cone algebra and interior-point iteration of the conic solver

#ifndef NFSEC_CONIC_CONES_HPP
#define NFSEC_CONIC_CONES_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nfsec/conic.hpp"

namespace nfsec::conic::detail
{
    enum class ConeKind
    {
        nonneg,
        soc,
        psd
    };

    // Second-order cones with more rows than this use a precomputed G'G in the Hessian
    inline constexpr std::size_t kDenseSocRows = 16;

    struct Cone
    {
        ConeKind kind = ConeKind::nonneg;
        std::size_t dim = 0;    // rows in the stacked constraint vector
        std::size_t order = 0;  // matrix order for PSD cones
        std::size_t offset = 0; // first row
        std::vector<std::size_t> cols; // variables touched, sorted
        Eigen::MatrixXd g;      // dim x cols.size(), s = h - g x(cols)
        Eigen::VectorXd h;
        Eigen::MatrixXd gtg;    // g' g for large second-order cones
    };

    // Position of lower-triangular entry (i, j), i >= j, in the column-major svec of an n x n matrix
    inline std::size_t svec_index(std::size_t i, std::size_t j, std::size_t n)
    {
        return j * n - j * (j - 1) / 2 + (i - j);
    }

    Eigen::MatrixXd svec_to_mat(const Eigen::Ref<const Eigen::VectorXd> &v, std::size_t n);
    void mat_to_svec(const Eigen::MatrixXd &m, Eigen::Ref<Eigen::VectorXd> out);

    // Nesterov-Todd scaling of one cone: W z = W^{-T} s = lambda
    struct ConeScaling
    {
        Eigen::VectorXd w;      // nonneg: sqrt(s / z)
        double beta = 1.0;      // soc
        Eigen::VectorXd v;      // soc
        Eigen::MatrixXd r;      // psd: W(X) = r' X r
        Eigen::MatrixXd rti;    // psd: r^{-T}
        Eigen::VectorXd lambda; // nonneg/soc: scaled point; psd: eigenvalues of the diagonal scaled point
    };

    // Returns false when s or z is not strictly interior
    bool compute_scaling(const Cone &cone, const Eigen::Ref<const Eigen::VectorXd> &s,
                         const Eigen::Ref<const Eigen::VectorXd> &z, ConeScaling &out);

    // Linear maps of the scaling on one cone segment
    void apply_w(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &in,
                 Eigen::Ref<Eigen::VectorXd> out);
    void apply_wt(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &in,
                  Eigen::Ref<Eigen::VectorXd> out);
    void apply_winv(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &in,
                    Eigen::Ref<Eigen::VectorXd> out);
    void apply_wint(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &in,
                    Eigen::Ref<Eigen::VectorXd> out);

    // Scaled point lambda as a cone vector
    void lambda_vector(const Cone &cone, const ConeScaling &sc, Eigen::Ref<Eigen::VectorXd> out);

    // Jordan product x o y and its inverse lambda \ y
    void jordan_product(const Cone &cone, const Eigen::Ref<const Eigen::VectorXd> &x,
                        const Eigen::Ref<const Eigen::VectorXd> &y, Eigen::Ref<Eigen::VectorXd> out);
    void jordan_divide(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &y,
                       Eigen::Ref<Eigen::VectorXd> out);

    void identity(const Cone &cone, Eigen::Ref<Eigen::VectorXd> out);
    std::size_t degree(const Cone &cone);

    // Smallest "eigenvalue" of a cone vector (negative outside the cone)
    double min_eigenvalue(const Cone &cone, const Eigen::Ref<const Eigen::VectorXd> &x);

    // Largest alpha with lambda + alpha d in the cone (infinity if unbounded)
    double max_step_scaled(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &d);

    struct IpResult
    {
        SolveStatus status = SolveStatus::numerical_failure;
        Eigen::VectorXd x;
        double primal_objective = 0.0;
        double gap = 0.0;
        double primal_residual = 0.0;
        double dual_residual = 0.0;
        int iterations = 0;
    };

    class InteriorPoint
    {
    public:
        InteriorPoint(std::size_t n, const std::vector<Cone> &cones, std::size_t rows, const Eigen::VectorXd &c,
                      const Eigen::VectorXd &h, const SolverSettings &settings);
        IpResult run();

    private:
        Eigen::VectorXd mult_g(const Eigen::VectorXd &x) const;
        Eigen::VectorXd mult_gt(const Eigen::VectorXd &z) const;
        bool factor(const Eigen::MatrixXd &hess);
        Eigen::VectorXd solve_reduced(const Eigen::VectorXd &rhs) const;
        // Solves [0 G'; G -W'W] [x; z] = [bx; bz]
        void solve_kkt(const Eigen::VectorXd &bx, const Eigen::VectorXd &bz, Eigen::VectorXd &x,
                       Eigen::VectorXd &z) const;
        Eigen::VectorXd scaled_apply(int which, const Eigen::VectorXd &in) const;
        Eigen::MatrixXd hessian() const;
        bool shift_into_cone(Eigen::VectorXd &v) const;

        struct HessianGroup
        {
            std::vector<std::size_t> cols;
            std::vector<std::size_t> cones;
            std::size_t rows = 0;
        };

        std::size_t n_;
        const std::vector<Cone> &cones_;
        std::vector<HessianGroup> groups_;
        std::size_t rows_;
        const Eigen::VectorXd &c_;
        const Eigen::VectorXd &h_;
        SolverSettings settings_;

        std::vector<ConeScaling> scaling_;
        Eigen::MatrixXd hess_;
        Eigen::LLT<Eigen::MatrixXd> llt_;
        double regularization_ = 0.0;
    };

} // namespace nfsec::conic::detail

#endif
