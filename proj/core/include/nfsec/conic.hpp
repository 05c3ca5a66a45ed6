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

#ifndef NFSEC_CONIC_HPP
#define NFSEC_CONIC_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nfsec::conic
{
    // Real affine expression: constant + sum coef * x[var]
    class LinearExpr
    {
    public:
        struct Term
        {
            std::size_t var;
            double coef;
        };

        LinearExpr() = default;
        LinearExpr(double constant) : constant_(constant) {} // NOLINT: implicit from a constant is intended
        static LinearExpr variable(std::size_t var, double coef = 1.0);

        LinearExpr &add_term(std::size_t var, double coef);
        LinearExpr &add_constant(double value);

        double constant() const noexcept { return constant_; }
        const std::vector<Term> &terms() const noexcept { return terms_; }

        double evaluate(const Eigen::VectorXd &x) const;

        LinearExpr &operator+=(const LinearExpr &other);
        LinearExpr &operator-=(const LinearExpr &other);
        LinearExpr &operator*=(double factor);

    private:
        double constant_ = 0.0;
        std::vector<Term> terms_;
    };

    LinearExpr operator+(LinearExpr a, const LinearExpr &b);
    LinearExpr operator-(LinearExpr a, const LinearExpr &b);
    LinearExpr operator*(double factor, LinearExpr a);

    // Complex affine expression as a pair of real expressions
    struct ComplexExpr
    {
        LinearExpr re;
        LinearExpr im;

        ComplexExpr &operator+=(const ComplexExpr &other);
        ComplexExpr &operator*=(std::complex<double> factor);
        std::complex<double> evaluate(const Eigen::VectorXd &x) const;
    };

    // Complex decision vector stored as size real parts followed by size imaginary parts
    struct ComplexVector
    {
        std::size_t offset = 0;
        std::size_t size = 0;

        std::size_t re(std::size_t n) const noexcept { return offset + n; }
        std::size_t im(std::size_t n) const noexcept { return offset + size + n; }

        // v^H w for a constant vector v
        ComplexExpr inner(const Eigen::Ref<const Eigen::VectorXcd> &v) const;
        Eigen::VectorXcd value(const Eigen::VectorXd &x) const;
    };

    // Hermitian matrix C + sum_t x[var_t] (coef_t E(row_t, col_t) + conj(coef_t) E(col_t, row_t)).
    // Diagonal terms (row == col) must have real coefficients.
    struct HermitianLmi
    {
        struct Term
        {
            std::size_t var;
            std::size_t row;
            std::size_t col;
            std::complex<double> coef;
        };

        explicit HermitianLmi(std::size_t n);

        std::size_t size() const noexcept { return static_cast<std::size_t>(constant.rows()); }
        void add(std::size_t row, std::size_t col, const LinearExpr &e);       // real affine entry
        void add(std::size_t row, std::size_t col, const ComplexExpr &e);      // complex affine entry (row != col)
        Eigen::MatrixXcd evaluate(const Eigen::VectorXd &x) const;

        Eigen::MatrixXcd constant;
        std::vector<Term> terms;
    };

    struct SolverSettings
    {
        int max_iterations = 100;
        double feasibility_tolerance = 1e-8;
        double absolute_tolerance = 1e-9;
        double relative_tolerance = 1e-7;
        double step_fraction = 0.99;
    };

    enum class SolveStatus
    {
        optimal,
        primal_infeasible,
        dual_infeasible,
        max_iterations,
        numerical_failure
    };

    std::string to_string(SolveStatus status);

    struct ConicSolution
    {
        SolveStatus status = SolveStatus::numerical_failure;
        Eigen::VectorXd x;       // primal variables
        double objective = 0.0;  // value of the maximized objective
        double gap = 0.0;        // complementarity gap at exit
        double primal_residual = 0.0;
        double dual_residual = 0.0;
        int iterations = 0;
    };

    // Conic program: maximize objective subject to nonnegativity, second-order-cone and
    // Hermitian PSD constraints over real scalar variables.
    class ConicProgram
    {
    public:
        std::size_t add_variables(std::size_t count);
        ComplexVector add_complex_vector(std::size_t size);
        std::size_t add_scalar();
        std::size_t variable_count() const noexcept { return variable_count_; }

        void set_objective(const LinearExpr &objective) { objective_ = objective; }
        const LinearExpr &objective() const noexcept { return objective_; }

        // expr >= 0
        void add_nonneg(const LinearExpr &expr);
        // ||(x_1, ..., x_m)|| <= t
        void add_soc(const LinearExpr &t, const std::vector<LinearExpr> &x);
        // ||x||^2 <= u * v with u, v >= 0
        void add_rotated_soc(const LinearExpr &u, const LinearExpr &v, const std::vector<LinearExpr> &x);
        // M(x) positive semidefinite
        void add_lmi(const HermitianLmi &lmi);

        struct SocConstraint
        {
            LinearExpr t;
            std::vector<LinearExpr> x;
        };

        const std::vector<LinearExpr> &nonneg_constraints() const noexcept { return nonneg_; }
        const std::vector<SocConstraint> &soc_constraints() const noexcept { return soc_; }
        const std::vector<HermitianLmi> &lmi_constraints() const noexcept { return lmi_; }

    private:
        void check(const LinearExpr &e) const;

        std::size_t variable_count_ = 0;
        LinearExpr objective_;
        std::vector<LinearExpr> nonneg_;
        std::vector<SocConstraint> soc_;
        std::vector<HermitianLmi> lmi_;
    };

    // Primal-dual interior-point solver for the lowered real cone program
    //   minimize c'x  subject to  G x + s = h,  s in K
    // with K a product of nonnegative orthants, second-order cones and PSD cones (scaled svec).
    // The lowering is kept so the same constraints can be re-solved with different objectives.
    class ConicSolver
    {
    public:
        explicit ConicSolver(const ConicProgram &program, SolverSettings settings = {});
        ~ConicSolver();
        ConicSolver(ConicSolver &&) noexcept;
        ConicSolver &operator=(ConicSolver &&) noexcept;

        // Replaces the (maximized) objective; constraints are unchanged
        void set_objective(const LinearExpr &objective);
        ConicSolution solve() const;

        const SolverSettings &settings() const noexcept { return settings_; }
        std::size_t cone_count() const noexcept;
        std::size_t cone_rows() const noexcept;

    private:
        struct Impl;
        std::unique_ptr<Impl> impl_;
        SolverSettings settings_;
    };

    ConicSolution solve(const ConicProgram &program, const SolverSettings &settings = {});

} // namespace nfsec::conic

#endif
