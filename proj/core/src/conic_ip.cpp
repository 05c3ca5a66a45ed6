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

#include "conic_cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nfsec::conic::detail
{
    namespace
    {
        constexpr double kInf = std::numeric_limits<double>::infinity();

        Eigen::Index ei(std::size_t v) { return static_cast<Eigen::Index>(v); }
    } // namespace

    // ---------------------------------------------------------------- svec helpers

    Eigen::MatrixXd svec_to_mat(const Eigen::Ref<const Eigen::VectorXd> &v, std::size_t n)
    {
        const double inv_sq2 = 1.0 / std::sqrt(2.0);
        Eigen::MatrixXd m(ei(n), ei(n));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = j; i < n; ++i)
            {
                const double x = v(ei(svec_index(i, j, n)));
                if (i == j)
                    m(ei(i), ei(i)) = x;
                else
                    m(ei(i), ei(j)) = m(ei(j), ei(i)) = x * inv_sq2;
            }
        return m;
    }

    void mat_to_svec(const Eigen::MatrixXd &m, Eigen::Ref<Eigen::VectorXd> out)
    {
        const std::size_t n = static_cast<std::size_t>(m.rows());
        const double half_sq2 = std::sqrt(2.0) / 2.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = j; i < n; ++i)
            {
                const std::size_t idx = svec_index(i, j, n);
                if (i == j)
                    out(ei(idx)) = m(ei(i), ei(i));
                else
                    out(ei(idx)) = half_sq2 * (m(ei(i), ei(j)) + m(ei(j), ei(i)));
            }
    }

    // ---------------------------------------------------------------- per-cone algebra

    bool compute_scaling(const Cone &cone, const Eigen::Ref<const Eigen::VectorXd> &s,
                         const Eigen::Ref<const Eigen::VectorXd> &z, ConeScaling &out)
    {
        switch (cone.kind)
        {
        case ConeKind::nonneg:
        {
            if (!(s(0) > 0.0 && z(0) > 0.0))
                return false;
            out.w.resize(1);
            out.w(0) = std::sqrt(s(0) / z(0));
            out.lambda.resize(1);
            out.lambda(0) = std::sqrt(s(0) * z(0));
            return true;
        }
        case ConeKind::soc:
        {
            const Eigen::Index m = s.size();
            const double ns1 = s.tail(m - 1).norm();
            const double nz1 = z.tail(m - 1).norm();
            const double a2 = (s(0) - ns1) * (s(0) + ns1);
            const double b2 = (z(0) - nz1) * (z(0) + nz1);
            if (!(s(0) > ns1 && z(0) > nz1 && a2 > 0.0 && b2 > 0.0))
                return false;
            const double a = std::sqrt(a2), b = std::sqrt(b2);
            const Eigen::VectorXd sb = s / a;
            const Eigen::VectorXd zb = z / b;
            const double gamma = std::sqrt((1.0 + sb.dot(zb)) / 2.0);
            Eigen::VectorXd wb(m);
            wb(0) = (sb(0) + zb(0)) / (2.0 * gamma);
            wb.tail(m - 1) = (sb.tail(m - 1) - zb.tail(m - 1)) / (2.0 * gamma);
            const double denom = std::sqrt(2.0 * (wb(0) + 1.0));
            out.v.resize(m);
            out.v(0) = (wb(0) + 1.0) / denom;
            out.v.tail(m - 1) = wb.tail(m - 1) / denom;
            out.beta = std::sqrt(a / b);
            out.lambda.resize(m);
            apply_w(cone, out, z, out.lambda);
            return true;
        }
        case ConeKind::psd:
        {
            const std::size_t n = cone.order;
            const Eigen::MatrixXd sm = svec_to_mat(s, n);
            const Eigen::MatrixXd zm = svec_to_mat(z, n);
            Eigen::LLT<Eigen::MatrixXd> ls(sm), lz(zm);
            if (ls.info() != Eigen::Success || lz.info() != Eigen::Success)
                return false;
            const Eigen::MatrixXd lsm = ls.matrixL();
            const Eigen::MatrixXd lzm = lz.matrixL();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(lzm.transpose() * lsm, Eigen::ComputeFullU | Eigen::ComputeFullV);
            const Eigen::VectorXd lam = svd.singularValues();
            if (!(lam.minCoeff() > 0.0))
                return false;
            const Eigen::VectorXd inv_sqrt = lam.cwiseSqrt().cwiseInverse();
            out.r = lsm * svd.matrixV() * inv_sqrt.asDiagonal();
            out.rti = lzm * svd.matrixU() * inv_sqrt.asDiagonal();
            out.lambda = lam;
            return true;
        }
        }
        return false;
    }

    void apply_w(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &in,
                 Eigen::Ref<Eigen::VectorXd> out)
    {
        switch (cone.kind)
        {
        case ConeKind::nonneg:
            out(0) = sc.w(0) * in(0);
            return;
        case ConeKind::soc:
        {
            // beta (2 v v' - J) in
            const double vt = sc.v.dot(in);
            Eigen::VectorXd r = 2.0 * vt * sc.v;
            r(0) -= in(0);
            r.tail(r.size() - 1) += in.tail(in.size() - 1);
            out = sc.beta * r;
            return;
        }
        case ConeKind::psd:
        {
            const Eigen::MatrixXd x = svec_to_mat(in, cone.order);
            mat_to_svec(sc.r.transpose() * x * sc.r, out);
            return;
        }
        }
    }

    void apply_wt(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &in,
                  Eigen::Ref<Eigen::VectorXd> out)
    {
        if (cone.kind != ConeKind::psd)
        {
            apply_w(cone, sc, in, out);
            return;
        }
        const Eigen::MatrixXd x = svec_to_mat(in, cone.order);
        mat_to_svec(sc.r * x * sc.r.transpose(), out);
    }

    void apply_winv(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &in,
                    Eigen::Ref<Eigen::VectorXd> out)
    {
        switch (cone.kind)
        {
        case ConeKind::nonneg:
            out(0) = in(0) / sc.w(0);
            return;
        case ConeKind::soc:
        {
            // (1/beta) (2 J v v' J - J) in
            Eigen::VectorXd jin = -in;
            jin(0) = in(0);
            Eigen::VectorXd jv = -sc.v;
            jv(0) = sc.v(0);
            const double t = jv.dot(in);
            out = (2.0 * t * jv - jin) / sc.beta;
            return;
        }
        case ConeKind::psd:
        {
            const Eigen::MatrixXd x = svec_to_mat(in, cone.order);
            mat_to_svec(sc.rti * x * sc.rti.transpose(), out);
            return;
        }
        }
    }

    void apply_wint(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &in,
                    Eigen::Ref<Eigen::VectorXd> out)
    {
        if (cone.kind != ConeKind::psd)
        {
            apply_winv(cone, sc, in, out);
            return;
        }
        const Eigen::MatrixXd x = svec_to_mat(in, cone.order);
        mat_to_svec(sc.rti.transpose() * x * sc.rti, out);
    }

    void lambda_vector(const Cone &cone, const ConeScaling &sc, Eigen::Ref<Eigen::VectorXd> out)
    {
        if (cone.kind != ConeKind::psd)
        {
            out = sc.lambda;
            return;
        }
        out.setZero();
        for (std::size_t i = 0; i < cone.order; ++i)
            out(ei(svec_index(i, i, cone.order))) = sc.lambda(ei(i));
    }

    void jordan_product(const Cone &cone, const Eigen::Ref<const Eigen::VectorXd> &x,
                        const Eigen::Ref<const Eigen::VectorXd> &y, Eigen::Ref<Eigen::VectorXd> out)
    {
        switch (cone.kind)
        {
        case ConeKind::nonneg:
            out(0) = x(0) * y(0);
            return;
        case ConeKind::soc:
        {
            const Eigen::Index m = x.size();
            Eigen::VectorXd r(m);
            r(0) = x.dot(y);
            r.tail(m - 1) = x(0) * y.tail(m - 1) + y(0) * x.tail(m - 1);
            out = r;
            return;
        }
        case ConeKind::psd:
        {
            const Eigen::MatrixXd xm = svec_to_mat(x, cone.order);
            const Eigen::MatrixXd ym = svec_to_mat(y, cone.order);
            mat_to_svec(0.5 * (xm * ym + ym * xm), out);
            return;
        }
        }
    }

    void jordan_divide(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &y,
                       Eigen::Ref<Eigen::VectorXd> out)
    {
        switch (cone.kind)
        {
        case ConeKind::nonneg:
            out(0) = y(0) / sc.lambda(0);
            return;
        case ConeKind::soc:
        {
            // Solve Arw(lambda) x = y
            const Eigen::VectorXd &l = sc.lambda;
            const Eigen::Index m = l.size();
            const double det = (l(0) - l.tail(m - 1).norm()) * (l(0) + l.tail(m - 1).norm());
            const double x0 = (l(0) * y(0) - l.tail(m - 1).dot(y.tail(m - 1))) / det;
            Eigen::VectorXd r(m);
            r(0) = x0;
            r.tail(m - 1) = (y.tail(m - 1) - x0 * l.tail(m - 1)) / l(0);
            out = r;
            return;
        }
        case ConeKind::psd:
        {
            Eigen::MatrixXd ym = svec_to_mat(y, cone.order);
            for (std::size_t j = 0; j < cone.order; ++j)
                for (std::size_t i = 0; i < cone.order; ++i)
                    ym(ei(i), ei(j)) *= 2.0 / (sc.lambda(ei(i)) + sc.lambda(ei(j)));
            mat_to_svec(ym, out);
            return;
        }
        }
    }

    void identity(const Cone &cone, Eigen::Ref<Eigen::VectorXd> out)
    {
        out.setZero();
        if (cone.kind == ConeKind::psd)
        {
            for (std::size_t i = 0; i < cone.order; ++i)
                out(ei(svec_index(i, i, cone.order))) = 1.0;
        }
        else
            out(0) = 1.0;
    }

    std::size_t degree(const Cone &cone) { return cone.kind == ConeKind::psd ? cone.order : 1; }

    double min_eigenvalue(const Cone &cone, const Eigen::Ref<const Eigen::VectorXd> &x)
    {
        switch (cone.kind)
        {
        case ConeKind::nonneg:
            return x(0);
        case ConeKind::soc:
            return x(0) - x.tail(x.size() - 1).norm();
        case ConeKind::psd:
        {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(svec_to_mat(x, cone.order), Eigen::EigenvaluesOnly);
            return es.eigenvalues().minCoeff();
        }
        }
        return 0.0;
    }

    double max_step_scaled(const Cone &cone, const ConeScaling &sc, const Eigen::Ref<const Eigen::VectorXd> &d)
    {
        switch (cone.kind)
        {
        case ConeKind::nonneg:
            return d(0) < 0.0 ? -sc.lambda(0) / d(0) : kInf;
        case ConeKind::soc:
        {
            const Eigen::VectorXd &l = sc.lambda;
            const Eigen::Index m = l.size();
            auto jdot = [m](const Eigen::VectorXd &a, const Eigen::Ref<const Eigen::VectorXd> &b)
            { return a(0) * b(0) - a.tail(m - 1).dot(b.tail(m - 1)); };
            const Eigen::VectorXd dv = d;
            const double c = jdot(l, l);
            const double b = jdot(l, dv);
            const double a = jdot(dv, dv);
            // smallest positive root of a t^2 + 2 b t + c
            if (a == 0.0)
                return b < 0.0 ? -c / (2.0 * b) : kInf;
            const double disc = b * b - a * c;
            if (disc < 0.0)
                return kInf;
            const double sq = std::sqrt(disc);
            const double q = -(b + std::copysign(sq, b));
            double best = kInf;
            const double r1 = q / a;
            if (r1 > 0.0)
                best = std::min(best, r1);
            if (q != 0.0)
            {
                const double r2 = c / q;
                if (r2 > 0.0)
                    best = std::min(best, r2);
            }
            // With a > 0 and b >= 0 both roots are non-positive
            if (a > 0.0 && b >= 0.0)
                return kInf;
            return best;
        }
        case ConeKind::psd:
        {
            Eigen::MatrixXd dm = svec_to_mat(d, cone.order);
            const Eigen::VectorXd is = sc.lambda.cwiseSqrt().cwiseInverse();
            dm = is.asDiagonal() * dm * is.asDiagonal();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dm, Eigen::EigenvaluesOnly);
            const double mu = es.eigenvalues().minCoeff();
            return mu >= 0.0 ? kInf : -1.0 / mu;
        }
        }
        return kInf;
    }

    // ---------------------------------------------------------------- interior point

    InteriorPoint::InteriorPoint(std::size_t n, const std::vector<Cone> &cones, std::size_t rows,
                                 const Eigen::VectorXd &c, const Eigen::VectorXd &h, const SolverSettings &settings)
        : n_(n), cones_(cones), rows_(rows), c_(c), h_(h), settings_(settings), scaling_(cones.size())
    {
        // Cones touching the same variables share one stacked product in the Hessian
        std::map<std::vector<std::size_t>, std::size_t> index;
        for (std::size_t k = 0; k < cones_.size(); ++k)
        {
            const auto &cone = cones_[k];
            if (cone.kind == ConeKind::soc && cone.gtg.size() > 0)
                continue;
            auto [it, inserted] = index.try_emplace(cone.cols, groups_.size());
            if (inserted)
                groups_.push_back({cone.cols, {}, 0});
            auto &g = groups_[it->second];
            g.cones.push_back(k);
            g.rows += cone.dim;
        }
    }

    Eigen::VectorXd InteriorPoint::mult_g(const Eigen::VectorXd &x) const
    {
        Eigen::VectorXd out(ei(rows_));
        Eigen::VectorXd local;
        for (const auto &cone : cones_)
        {
            local.resize(ei(cone.cols.size()));
            for (std::size_t i = 0; i < cone.cols.size(); ++i)
                local(ei(i)) = x(ei(cone.cols[i]));
            out.segment(ei(cone.offset), ei(cone.dim)).noalias() = cone.g * local;
        }
        return out;
    }

    Eigen::VectorXd InteriorPoint::mult_gt(const Eigen::VectorXd &z) const
    {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(ei(n_));
        Eigen::VectorXd local;
        for (const auto &cone : cones_)
        {
            local.noalias() = cone.g.transpose() * z.segment(ei(cone.offset), ei(cone.dim));
            for (std::size_t i = 0; i < cone.cols.size(); ++i)
                out(ei(cone.cols[i])) += local(ei(i));
        }
        return out;
    }

    // which: 0 = W, 1 = W', 2 = W^{-1}, 3 = W^{-T}
    Eigen::VectorXd InteriorPoint::scaled_apply(int which, const Eigen::VectorXd &in) const
    {
        Eigen::VectorXd out(ei(rows_));
        for (std::size_t k = 0; k < cones_.size(); ++k)
        {
            const auto &cone = cones_[k];
            const auto seg_in = in.segment(ei(cone.offset), ei(cone.dim));
            auto seg_out = out.segment(ei(cone.offset), ei(cone.dim));
            switch (which)
            {
            case 0:
                apply_w(cone, scaling_[k], seg_in, seg_out);
                break;
            case 1:
                apply_wt(cone, scaling_[k], seg_in, seg_out);
                break;
            case 2:
                apply_winv(cone, scaling_[k], seg_in, seg_out);
                break;
            default:
                apply_wint(cone, scaling_[k], seg_in, seg_out);
                break;
            }
        }
        return out;
    }

    Eigen::MatrixXd InteriorPoint::hessian() const
    {
        Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(ei(n_), ei(n_));
        auto scatter = [&](const std::vector<std::size_t> &cols, const Eigen::MatrixXd &local) {
            const Eigen::Index nc = ei(cols.size());
            for (Eigen::Index j = 0; j < nc; ++j)
            {
                const Eigen::Index gj = ei(cols[static_cast<std::size_t>(j)]);
                for (Eigen::Index i = 0; i < nc; ++i)
                    hess(ei(cols[static_cast<std::size_t>(i)]), gj) += local(i, j);
            }
        };

        // Large second-order cones: G'G plus a rank-two correction
        Eigen::MatrixXd local;
        for (std::size_t k = 0; k < cones_.size(); ++k)
        {
            const auto &cone = cones_[k];
            if (!(cone.kind == ConeKind::soc && cone.gtg.size() > 0))
                continue;
            const auto &sc = scaling_[k];
            Eigen::VectorXd p = -sc.v;
            p(0) = sc.v(0);
            const Eigen::VectorXd gp = cone.g.transpose() * p;
            const Eigen::VectorXd gv = cone.g.transpose() * sc.v;
            local = cone.gtg;
            local.noalias() += 4.0 * sc.v.squaredNorm() * gp * gp.transpose();
            local.noalias() -= 2.0 * (gp * gv.transpose() + gv * gp.transpose());
            local /= sc.beta * sc.beta;
            scatter(cone.cols, local);
        }

        // Everything else: M'M with M = W^{-T} G stacked over the cones of a group
        for (const auto &group : groups_)
        {
            const Eigen::Index nc = ei(group.cols.size());
            Eigen::MatrixXd m(ei(group.rows), nc);
            Eigen::Index row = 0;
            for (std::size_t k : group.cones)
            {
                const auto &cone = cones_[k];
                const auto &sc = scaling_[k];
                const Eigen::Index dim = ei(cone.dim);
                if (cone.kind == ConeKind::nonneg)
                    m.middleRows(row, dim) = cone.g / sc.w(0);
                else
                    for (Eigen::Index j = 0; j < nc; ++j)
                    {
                        auto col = m.col(j).segment(row, dim);
                        apply_wint(cone, sc, cone.g.col(j), col);
                    }
                row += dim;
            }
            local = Eigen::MatrixXd::Zero(nc, nc);
            local.selfadjointView<Eigen::Lower>().rankUpdate(m.transpose());
            local.triangularView<Eigen::StrictlyUpper>() = local.transpose();
            scatter(group.cols, local);
        }
        return hess;
    }

    bool InteriorPoint::factor(const Eigen::MatrixXd &hess)
    {
        hess_ = hess;
        regularization_ = 0.0;
        llt_.compute(hess_);
        if (llt_.info() == Eigen::Success && llt_.matrixLLT().allFinite())
            return true;
        const double scale = 1.0 + hess_.diagonal().cwiseAbs().maxCoeff();
        for (double reg = 1e-14; reg < 1e-3; reg *= 100.0)
        {
            Eigen::MatrixXd shifted = hess_;
            shifted.diagonal().array() += reg * scale;
            llt_.compute(shifted);
            if (llt_.info() == Eigen::Success && llt_.matrixLLT().allFinite())
            {
                regularization_ = reg * scale;
                return true;
            }
        }
        return false;
    }

    Eigen::VectorXd InteriorPoint::solve_reduced(const Eigen::VectorXd &rhs) const
    {
        Eigen::VectorXd x = llt_.solve(rhs);
        for (int it = 0; it < 2; ++it)
        {
            const Eigen::VectorXd r = rhs - hess_ * x;
            x += llt_.solve(r);
        }
        return x;
    }

    void InteriorPoint::solve_kkt(const Eigen::VectorXd &bx, const Eigen::VectorXd &bz, Eigen::VectorXd &x,
                                  Eigen::VectorXd &z) const
    {
        // (W'W)^{-1} = W^{-1} W^{-T}
        auto once = [&](const Eigen::VectorXd &rx, const Eigen::VectorXd &rz, Eigen::VectorXd &ox,
                        Eigen::VectorXd &oz) {
            const Eigen::VectorXd t = scaled_apply(2, scaled_apply(3, rz));
            ox = solve_reduced(rx + mult_gt(t));
            oz = scaled_apply(2, scaled_apply(3, mult_g(ox) - rz));
        };
        once(bx, bz, x, z);

        // Refinement against the unreduced system
        Eigen::VectorXd cx, cz;
        for (int it = 0; it < 2; ++it)
        {
            const Eigen::VectorXd rx = bx - mult_gt(z);
            const Eigen::VectorXd rz = bz - mult_g(x) + scaled_apply(1, scaled_apply(0, z));
            once(rx, rz, cx, cz);
            x += cx;
            z += cz;
        }
    }

    bool InteriorPoint::shift_into_cone(Eigen::VectorXd &v) const
    {
        double ts = -kInf;
        for (const auto &cone : cones_)
            ts = std::max(ts, -min_eigenvalue(cone, v.segment(ei(cone.offset), ei(cone.dim))));
        if (!std::isfinite(ts))
            return false;
        if (ts >= -1e-8 * std::max(v.norm(), 1.0))
        {
            Eigen::VectorXd e(ei(rows_));
            for (const auto &cone : cones_)
            {
                auto seg = e.segment(ei(cone.offset), ei(cone.dim));
                identity(cone, seg);
            }
            v += (1.0 + ts) * e;
        }
        return true;
    }

    IpResult InteriorPoint::run()
    {
        IpResult res;
        res.x = Eigen::VectorXd::Zero(ei(n_));

        // Identity scaling for the least-norm starting point
        for (std::size_t k = 0; k < cones_.size(); ++k)
        {
            const auto &cone = cones_[k];
            auto &sc = scaling_[k];
            sc = ConeScaling{};
            if (cone.kind == ConeKind::nonneg)
                sc.w = Eigen::VectorXd::Ones(1);
            else if (cone.kind == ConeKind::soc)
            {
                sc.beta = 1.0;
                sc.v = Eigen::VectorXd::Zero(ei(cone.dim));
                sc.v(0) = 1.0;
            }
            else
            {
                sc.r = Eigen::MatrixXd::Identity(ei(cone.order), ei(cone.order));
                sc.rti = sc.r;
            }
        }
        if (!factor(hessian()))
            return res;

        Eigen::VectorXd x, s, z, tmp;
        solve_kkt(Eigen::VectorXd::Zero(ei(n_)), h_, x, tmp);
        s = -tmp;
        solve_kkt(-c_, Eigen::VectorXd::Zero(ei(rows_)), tmp, z);
        if (!shift_into_cone(s) || !shift_into_cone(z))
            return res;
        double tau = 1.0, kappa = 1.0;

        std::size_t deg = 0;
        for (const auto &cone : cones_)
            deg += degree(cone);

        const double resx0 = std::max(1.0, c_.norm());
        const double resz0 = std::max(1.0, h_.norm());

        Eigen::VectorXd e(ei(rows_));
        for (const auto &cone : cones_)
        {
            auto seg = e.segment(ei(cone.offset), ei(cone.dim));
            identity(cone, seg);
        }

        // Best iterate seen, returned when the iteration stalls
        struct Snapshot
        {
            double score = kInf;
            Eigen::VectorXd x;
            double objective = 0.0, gap = 0.0, pres = 0.0, dres = 0.0;
        } best;

        auto finish = [&](SolveStatus status, int it)
        {
            res.status = status;
            res.iterations = it;
            res.x = x / tau;
            res.primal_objective = c_.dot(x) / tau;
            if ((status == SolveStatus::numerical_failure || status == SolveStatus::max_iterations) &&
                best.x.size() > 0)
            {
                res.x = best.x;
                res.primal_objective = best.objective;
                res.gap = best.gap;
                res.primal_residual = best.pres;
                res.dual_residual = best.dres;
            }
            return res;
        };

        for (int it = 0;; ++it)
        {
            const Eigen::VectorXd gtz = mult_gt(z);
            const Eigen::VectorXd gx = mult_g(x);
            const Eigen::VectorXd rx = gtz + c_ * tau;
            const Eigen::VectorXd rz = s + gx - h_ * tau;
            const double cx = c_.dot(x), hz = h_.dot(z);
            const double rt = kappa + cx + hz;

            const double pcost = cx / tau, dcost = -hz / tau;
            const double gap = s.dot(z) / (tau * tau);
            double relgap = kInf;
            if (pcost < 0.0)
                relgap = gap / -pcost;
            else if (dcost > 0.0)
                relgap = gap / dcost;
            const double pres = rz.norm() / tau / resz0;
            const double dres = rx.norm() / tau / resx0;
            const double pinfres = hz < 0.0 ? gtz.norm() / resx0 / -hz : kInf;
            const double dinfres = cx < 0.0 ? (gx + s).norm() / resz0 / -cx : kInf;

            res.gap = gap;
            res.primal_residual = pres;
            res.dual_residual = dres;

            if (!std::isfinite(pres) || !std::isfinite(dres) || !std::isfinite(gap))
                return finish(SolveStatus::numerical_failure, it);
            const double score = std::max({pres, dres, std::min(gap, relgap)});
            if (score < best.score)
                best = {score, x / tau, pcost, gap, pres, dres};
            if (pres <= settings_.feasibility_tolerance && dres <= settings_.feasibility_tolerance &&
                (gap <= settings_.absolute_tolerance || relgap <= settings_.relative_tolerance))
                return finish(SolveStatus::optimal, it);
            if (pinfres <= settings_.feasibility_tolerance)
            {
                res = finish(SolveStatus::primal_infeasible, it);
                res.x.setZero();
                return res;
            }
            if (dinfres <= settings_.feasibility_tolerance)
                return finish(SolveStatus::dual_infeasible, it);
            if (it >= settings_.max_iterations)
                return finish(SolveStatus::max_iterations, it);

            // Nesterov-Todd scaling at the current iterate
            for (std::size_t k = 0; k < cones_.size(); ++k)
            {
                const auto &cone = cones_[k];
                if (!compute_scaling(cone, s.segment(ei(cone.offset), ei(cone.dim)),
                                     z.segment(ei(cone.offset), ei(cone.dim)), scaling_[k]))
                    return finish(SolveStatus::numerical_failure, it);
            }
            Eigen::VectorXd lam(ei(rows_));
            for (std::size_t k = 0; k < cones_.size(); ++k)
            {
                auto seg = lam.segment(ei(cones_[k].offset), ei(cones_[k].dim));
                lambda_vector(cones_[k], scaling_[k], seg);
            }
            const double mu = (lam.squaredNorm() + tau * kappa) / static_cast<double>(deg + 1);

            if (!factor(hessian()))
                return finish(SolveStatus::numerical_failure, it);

            Eigen::VectorXd u2x, u2z;
            solve_kkt(-c_, h_, u2x, u2z);
            const double u2den = c_.dot(u2x) + h_.dot(u2z) - kappa / tau;

            struct Direction
            {
                Eigen::VectorXd dx, dz, ds, dz_scaled, ds_scaled;
                double dtau = 0.0, dkappa = 0.0;
            };

            // rc: target of W^{-T} ds + W dz; rtau: target of kappa dtau + tau dkappa
            auto direction = [&](double eta, const Eigen::VectorXd &rc, double rtau)
            {
                Direction d;
                Eigen::VectorXd u1x, u1z;
                solve_kkt(-eta * rx, -eta * rz - scaled_apply(1, rc), u1x, u1z);
                d.dtau = (-eta * rt - c_.dot(u1x) - h_.dot(u1z) - rtau / tau) / u2den;
                d.dx = u1x + d.dtau * u2x;
                d.dz = u1z + d.dtau * u2z;
                d.dz_scaled = scaled_apply(0, d.dz);
                d.ds_scaled = rc - d.dz_scaled;
                d.ds = scaled_apply(1, d.ds_scaled);
                d.dkappa = (rtau - kappa * d.dtau) / tau;
                return d;
            };

            auto max_step = [&](const Direction &d)
            {
                double alpha = kInf;
                for (std::size_t k = 0; k < cones_.size(); ++k)
                {
                    const auto &cone = cones_[k];
                    alpha = std::min(alpha, max_step_scaled(cone, scaling_[k],
                                                            d.ds_scaled.segment(ei(cone.offset), ei(cone.dim))));
                    alpha = std::min(alpha, max_step_scaled(cone, scaling_[k],
                                                            d.dz_scaled.segment(ei(cone.offset), ei(cone.dim))));
                }
                if (d.dtau < 0.0)
                    alpha = std::min(alpha, -tau / d.dtau);
                if (d.dkappa < 0.0)
                    alpha = std::min(alpha, -kappa / d.dkappa);
                return alpha;
            };

            // Affine-scaling predictor
            const Direction aff = direction(1.0, -lam, -tau * kappa);
            const double alpha_aff = std::min(1.0, max_step(aff));
            const double sigma = std::pow(1.0 - alpha_aff, 3.0);

            // Mehrotra corrector
            Eigen::VectorXd target(ei(rows_));
            for (std::size_t k = 0; k < cones_.size(); ++k)
            {
                const auto &cone = cones_[k];
                const Eigen::Index off = ei(cone.offset), dim = ei(cone.dim);
                Eigen::VectorXd ll(dim), corr(dim);
                jordan_product(cone, lam.segment(off, dim), lam.segment(off, dim), ll);
                jordan_product(cone, aff.ds_scaled.segment(off, dim), aff.dz_scaled.segment(off, dim), corr);
                const Eigen::VectorXd rhs = sigma * mu * e.segment(off, dim) - ll - corr;
                auto seg = target.segment(off, dim);
                jordan_divide(cone, scaling_[k], rhs, seg);
            }
            const double rtau = -tau * kappa - aff.dtau * aff.dkappa + sigma * mu;
            const Direction dir = direction(1.0 - sigma, target, rtau);
            const double alpha = std::min(1.0, settings_.step_fraction * max_step(dir));
            if (!(alpha > 1e-12) || !std::isfinite(alpha))
                return finish(SolveStatus::numerical_failure, it);

            x += alpha * dir.dx;
            s += alpha * dir.ds;
            z += alpha * dir.dz;
            tau += alpha * dir.dtau;
            kappa += alpha * dir.dkappa;
        }
    }

} // namespace nfsec::conic::detail
