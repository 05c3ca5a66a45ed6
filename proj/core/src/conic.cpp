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

#include "nfsec/conic.hpp"
#include "conic_cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace nfsec::conic
{
    // ---------------------------------------------------------------- expressions

    LinearExpr LinearExpr::variable(std::size_t var, double coef)
    {
        LinearExpr e;
        e.terms_.push_back({var, coef});
        return e;
    }

    LinearExpr &LinearExpr::add_term(std::size_t var, double coef)
    {
        if (coef != 0.0)
            terms_.push_back({var, coef});
        return *this;
    }

    LinearExpr &LinearExpr::add_constant(double value)
    {
        constant_ += value;
        return *this;
    }

    double LinearExpr::evaluate(const Eigen::VectorXd &x) const
    {
        double v = constant_;
        for (const auto &t : terms_)
            v += t.coef * x(static_cast<Eigen::Index>(t.var));
        return v;
    }

    LinearExpr &LinearExpr::operator+=(const LinearExpr &other)
    {
        constant_ += other.constant_;
        terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
        return *this;
    }

    LinearExpr &LinearExpr::operator-=(const LinearExpr &other)
    {
        constant_ -= other.constant_;
        for (const auto &t : other.terms_)
            terms_.push_back({t.var, -t.coef});
        return *this;
    }

    LinearExpr &LinearExpr::operator*=(double factor)
    {
        constant_ *= factor;
        for (auto &t : terms_)
            t.coef *= factor;
        return *this;
    }

    LinearExpr operator+(LinearExpr a, const LinearExpr &b) { return a += b; }
    LinearExpr operator-(LinearExpr a, const LinearExpr &b) { return a -= b; }
    LinearExpr operator*(double factor, LinearExpr a) { return a *= factor; }

    ComplexExpr &ComplexExpr::operator+=(const ComplexExpr &other)
    {
        re += other.re;
        im += other.im;
        return *this;
    }

    ComplexExpr &ComplexExpr::operator*=(std::complex<double> factor)
    {
        LinearExpr new_re = factor.real() * re - factor.imag() * im;
        LinearExpr new_im = factor.imag() * re + factor.real() * im;
        re = std::move(new_re);
        im = std::move(new_im);
        return *this;
    }

    std::complex<double> ComplexExpr::evaluate(const Eigen::VectorXd &x) const
    {
        return {re.evaluate(x), im.evaluate(x)};
    }

    ComplexExpr ComplexVector::inner(const Eigen::Ref<const Eigen::VectorXcd> &v) const
    {
        if (static_cast<std::size_t>(v.size()) != size)
            throw std::invalid_argument("ComplexVector::inner: dimension mismatch");
        // conj(v_n) w_n = (vr wr + vi wi) + j (vr wi - vi wr)
        ComplexExpr e;
        for (std::size_t n = 0; n < size; ++n)
        {
            const double vr = v(static_cast<Eigen::Index>(n)).real();
            const double vi = v(static_cast<Eigen::Index>(n)).imag();
            e.re.add_term(re(n), vr).add_term(im(n), vi);
            e.im.add_term(im(n), vr).add_term(re(n), -vi);
        }
        return e;
    }

    Eigen::VectorXcd ComplexVector::value(const Eigen::VectorXd &x) const
    {
        Eigen::VectorXcd w(static_cast<Eigen::Index>(size));
        for (std::size_t n = 0; n < size; ++n)
            w(static_cast<Eigen::Index>(n)) = {x(static_cast<Eigen::Index>(re(n))), x(static_cast<Eigen::Index>(im(n)))};
        return w;
    }

    HermitianLmi::HermitianLmi(std::size_t n) : constant(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                                                  static_cast<Eigen::Index>(n)))
    {
        if (n == 0)
            throw std::invalid_argument("HermitianLmi: size must be positive");
    }

    void HermitianLmi::add(std::size_t row, std::size_t col, const LinearExpr &e)
    {
        if (row >= size() || col >= size())
            throw std::out_of_range("HermitianLmi::add: index out of range");
        const auto r = static_cast<Eigen::Index>(row), c = static_cast<Eigen::Index>(col);
        constant(r, c) += e.constant();
        if (row != col)
            constant(c, r) += e.constant();
        for (const auto &t : e.terms())
            terms.push_back({t.var, row, col, {t.coef, 0.0}});
    }

    void HermitianLmi::add(std::size_t row, std::size_t col, const ComplexExpr &e)
    {
        if (row == col)
            throw std::invalid_argument("HermitianLmi::add: complex entries must be off-diagonal");
        if (row >= size() || col >= size())
            throw std::out_of_range("HermitianLmi::add: index out of range");
        const auto r = static_cast<Eigen::Index>(row), c = static_cast<Eigen::Index>(col);
        const std::complex<double> k(e.re.constant(), e.im.constant());
        constant(r, c) += k;
        constant(c, r) += std::conj(k);
        for (const auto &t : e.re.terms())
            terms.push_back({t.var, row, col, {t.coef, 0.0}});
        for (const auto &t : e.im.terms())
            terms.push_back({t.var, row, col, {0.0, t.coef}});
    }

    Eigen::MatrixXcd HermitianLmi::evaluate(const Eigen::VectorXd &x) const
    {
        Eigen::MatrixXcd m = constant;
        for (const auto &t : terms)
        {
            const double xv = x(static_cast<Eigen::Index>(t.var));
            const auto r = static_cast<Eigen::Index>(t.row), c = static_cast<Eigen::Index>(t.col);
            if (t.row == t.col)
                m(r, r) += t.coef.real() * xv;
            else
            {
                m(r, c) += t.coef * xv;
                m(c, r) += std::conj(t.coef) * xv;
            }
        }
        return m;
    }

    std::string to_string(SolveStatus status)
    {
        switch (status)
        {
        case SolveStatus::optimal:
            return "optimal";
        case SolveStatus::primal_infeasible:
            return "primal_infeasible";
        case SolveStatus::dual_infeasible:
            return "dual_infeasible";
        case SolveStatus::max_iterations:
            return "max_iterations";
        case SolveStatus::numerical_failure:
            return "numerical_failure";
        }
        return "unknown";
    }

    // ---------------------------------------------------------------- program

    std::size_t ConicProgram::add_variables(std::size_t count)
    {
        const std::size_t first = variable_count_;
        variable_count_ += count;
        return first;
    }

    ComplexVector ConicProgram::add_complex_vector(std::size_t size)
    {
        return ComplexVector{add_variables(2 * size), size};
    }

    std::size_t ConicProgram::add_scalar() { return add_variables(1); }

    void ConicProgram::check(const LinearExpr &e) const
    {
        for (const auto &t : e.terms())
            if (t.var >= variable_count_)
                throw std::out_of_range("ConicProgram: expression references an undeclared variable");
    }

    void ConicProgram::add_nonneg(const LinearExpr &expr)
    {
        check(expr);
        nonneg_.push_back(expr);
    }

    void ConicProgram::add_soc(const LinearExpr &t, const std::vector<LinearExpr> &x)
    {
        check(t);
        for (const auto &e : x)
            check(e);
        soc_.push_back({t, x});
    }

    void ConicProgram::add_rotated_soc(const LinearExpr &u, const LinearExpr &v, const std::vector<LinearExpr> &x)
    {
        // ||x||^2 <= u v  <=>  ||(2x, u - v)|| <= u + v
        std::vector<LinearExpr> body;
        body.reserve(x.size() + 1);
        for (const auto &e : x)
            body.push_back(2.0 * e);
        body.push_back(u - v);
        add_soc(u + v, body);
    }

    void ConicProgram::add_lmi(const HermitianLmi &lmi)
    {
        for (const auto &t : lmi.terms)
        {
            if (t.var >= variable_count_)
                throw std::out_of_range("ConicProgram::add_lmi: term references an undeclared variable");
            if (t.row == t.col && t.coef.imag() != 0.0)
                throw std::invalid_argument("ConicProgram::add_lmi: diagonal coefficients must be real");
        }
        if ((lmi.constant - lmi.constant.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + lmi.constant.cwiseAbs().maxCoeff()))
            throw std::invalid_argument("ConicProgram::add_lmi: constant part is not Hermitian");
        lmi_.push_back(lmi);
    }

    // ---------------------------------------------------------------- lowering

    namespace
    {
        using detail::Cone;
        using detail::ConeKind;

        // Row builder: accumulates -coef into G (since s = h - G x) per local column
        struct RowBuilder
        {
            std::map<std::size_t, std::size_t> col_index;
            std::vector<std::size_t> cols;

            std::size_t local(std::size_t var)
            {
                auto [it, inserted] = col_index.emplace(var, cols.size());
                if (inserted)
                    cols.push_back(var);
                return it->second;
            }
        };

        Cone make_cone(ConeKind kind, std::size_t dim, std::size_t order,
                       const std::vector<std::vector<std::pair<std::size_t, double>>> &rows, const Eigen::VectorXd &h)
        {
            RowBuilder rb;
            for (const auto &row : rows)
                for (const auto &[var, coef] : row)
                    rb.local(var);
            // Sort columns for deterministic, cache-friendly scatter
            std::vector<std::size_t> sorted = rb.cols;
            std::sort(sorted.begin(), sorted.end());
            std::map<std::size_t, std::size_t> pos;
            for (std::size_t i = 0; i < sorted.size(); ++i)
                pos[sorted[i]] = i;

            Cone cone;
            cone.kind = kind;
            cone.dim = dim;
            cone.order = order;
            cone.cols = sorted;
            cone.g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(sorted.size()));
            cone.h = h;
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (const auto &[var, coef] : rows[r])
                    cone.g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(pos[var])) -= coef;
            return cone;
        }

        std::vector<std::pair<std::size_t, double>> expr_row(const LinearExpr &e)
        {
            std::vector<std::pair<std::size_t, double>> row;
            row.reserve(e.terms().size());
            for (const auto &t : e.terms())
                row.emplace_back(t.var, t.coef);
            return row;
        }

        Cone lower_lmi(const HermitianLmi &lmi)
        {
            const std::size_t n = lmi.size();
            const std::size_t n2 = 2 * n;
            const std::size_t dim = n2 * (n2 + 1) / 2;
            const double sq2 = std::sqrt(2.0);
            std::vector<std::vector<std::pair<std::size_t, double>>> rows(dim);
            Eigen::VectorXd h = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));

            auto put = [&](std::size_t i, std::size_t j, double value, std::size_t var, bool is_constant)
            {
                // lower-triangular entry (i, j) of the real embedding
                if (i < j)
                    std::swap(i, j);
                const std::size_t idx = detail::svec_index(i, j, n2);
                const double scale = (i == j) ? 1.0 : sq2;
                if (is_constant)
                    h(static_cast<Eigen::Index>(idx)) += scale * value;
                else
                    rows[idx].emplace_back(var, scale * value);
            };

            // Real embedding [[A, -B], [B, A]] of M = A + jB; only the lower triangle is stored
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t r = c; r < n; ++r)
                {
                    const auto m = lmi.constant(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                    put(r, c, m.real(), 0, true);
                    put(r + n, c + n, m.real(), 0, true);
                    if (r != c)
                    {
                        put(r + n, c, m.imag(), 0, true);  // B(r, c)
                        put(c + n, r, -m.imag(), 0, true); // B(c, r) = -B(r, c)
                    }
                }

            for (const auto &t : lmi.terms)
            {
                if (t.row == t.col)
                {
                    put(t.row, t.row, t.coef.real(), t.var, false);
                    put(t.row + n, t.row + n, t.coef.real(), t.var, false);
                    continue;
                }
                const double a = t.coef.real(), b = t.coef.imag();
                if (a != 0.0)
                {
                    put(t.row, t.col, a, t.var, false);
                    put(t.row + n, t.col + n, a, t.var, false);
                }
                if (b != 0.0)
                {
                    put(t.row + n, t.col, b, t.var, false);
                    put(t.col + n, t.row, -b, t.var, false);
                }
            }
            return make_cone(ConeKind::psd, dim, n2, rows, h);
        }
    } // namespace

    // ---------------------------------------------------------------- solver

    struct ConicSolver::Impl
    {
        std::size_t n = 0; // variables
        std::vector<Cone> cones;
        std::size_t rows = 0;
        Eigen::VectorXd c;       // minimization objective
        double objective_constant = 0.0;
        Eigen::VectorXd h_full;  // stacked h
    };

    ConicSolver::ConicSolver(const ConicProgram &program, SolverSettings settings)
        : impl_(std::make_unique<Impl>()), settings_(settings)
    {
        auto &im = *impl_;
        im.n = program.variable_count();

        for (const auto &e : program.nonneg_constraints())
        {
            Eigen::VectorXd h(1);
            h(0) = e.constant();
            im.cones.push_back(make_cone(ConeKind::nonneg, 1, 0, {expr_row(e)}, h));
        }
        for (const auto &soc : program.soc_constraints())
        {
            const std::size_t dim = soc.x.size() + 1;
            std::vector<std::vector<std::pair<std::size_t, double>>> rows;
            rows.reserve(dim);
            Eigen::VectorXd h(static_cast<Eigen::Index>(dim));
            rows.push_back(expr_row(soc.t));
            h(0) = soc.t.constant();
            for (std::size_t i = 0; i < soc.x.size(); ++i)
            {
                rows.push_back(expr_row(soc.x[i]));
                h(static_cast<Eigen::Index>(i + 1)) = soc.x[i].constant();
            }
            Cone cone = make_cone(ConeKind::soc, dim, 0, rows, h);
            if (cone.dim > detail::kDenseSocRows)
                cone.gtg = cone.g.transpose() * cone.g;
            im.cones.push_back(std::move(cone));
        }
        for (const auto &lmi : program.lmi_constraints())
            im.cones.push_back(lower_lmi(lmi));

        std::vector<bool> used(im.n, false);
        for (auto &cone : im.cones)
        {
            cone.offset = im.rows;
            im.rows += cone.dim;
            for (std::size_t v : cone.cols)
                used[v] = true;
        }
        for (std::size_t v = 0; v < im.n; ++v)
            if (!used[v])
                throw std::invalid_argument("ConicSolver: variable " + std::to_string(v) +
                                            " appears in no constraint; the program is not bounded");

        im.h_full.resize(static_cast<Eigen::Index>(im.rows));
        for (const auto &cone : im.cones)
            im.h_full.segment(static_cast<Eigen::Index>(cone.offset), static_cast<Eigen::Index>(cone.dim)) = cone.h;
        set_objective(program.objective());
    }

    ConicSolver::~ConicSolver() = default;
    ConicSolver::ConicSolver(ConicSolver &&) noexcept = default;
    ConicSolver &ConicSolver::operator=(ConicSolver &&) noexcept = default;

    std::size_t ConicSolver::cone_count() const noexcept { return impl_->cones.size(); }
    std::size_t ConicSolver::cone_rows() const noexcept { return impl_->rows; }

    void ConicSolver::set_objective(const LinearExpr &objective)
    {
        auto &im = *impl_;
        im.c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(im.n));
        for (const auto &t : objective.terms())
        {
            if (t.var >= im.n)
                throw std::out_of_range("ConicSolver::set_objective: undeclared variable");
            im.c(static_cast<Eigen::Index>(t.var)) -= t.coef; // maximize f  <=>  minimize -f
        }
        im.objective_constant = objective.constant();
    }

    ConicSolution ConicSolver::solve() const
    {
        const auto &im = *impl_;
        detail::InteriorPoint ip(im.n, im.cones, im.rows, im.c, im.h_full, settings_);
        detail::IpResult r = ip.run();

        ConicSolution sol;
        sol.status = r.status;
        sol.x = std::move(r.x);
        sol.objective = -r.primal_objective + im.objective_constant;
        sol.gap = r.gap;
        sol.primal_residual = r.primal_residual;
        sol.dual_residual = r.dual_residual;
        sol.iterations = r.iterations;
        return sol;
    }

    ConicSolution solve(const ConicProgram &program, const SolverSettings &settings)
    {
        return ConicSolver(program, settings).solve();
    }

} // namespace nfsec::conic
