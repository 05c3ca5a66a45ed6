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

#include "nfsec/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nfsec/csv_error.hpp"
#include "nfsec/evaluation.hpp"

namespace nfsec
{
    using conic::ComplexExpr;
    using conic::ComplexVector;
    using conic::LinearExpr;

    std::string to_string(ReportStatus status)
    {
        switch (status)
        {
        case ReportStatus::optimal:
            return "optimal";
        case ReportStatus::infeasible:
            return "infeasible";
        case ReportStatus::max_iterations:
            return "max_iterations";
        case ReportStatus::solver_failure:
            return "solver_failure";
        }
        return "unknown";
    }

    // ---------------------------------------------------------------- secrecy model

    namespace
    {
        SecrecyConstraint point_constraint(std::size_t eve, const PolarLocation &p, const ArrayGeometry &geo)
        {
            SecrecyConstraint c;
            c.kind = SecrecyConstraint::Kind::point;
            c.eve = eve;
            c.steering = steering_vector(p, geo).entries();
            return c;
        }

        SecrecyConstraint ball_constraint(std::size_t eve, const PolarLocation &p, double eps,
                                          const ArrayGeometry &geo)
        {
            SecrecyConstraint c = point_constraint(eve, p, geo);
            c.kind = SecrecyConstraint::Kind::ball;
            c.epsilon = eps;
            return c;
        }

        SecrecyConstraint box_constraint(std::size_t eve, RefinedCellModel model)
        {
            SecrecyConstraint c;
            c.kind = SecrecyConstraint::Kind::box;
            c.eve = eve;
            c.steering = model.steering;
            c.cell = std::move(model);
            return c;
        }

        void add_sampling(SecrecyModel &model, std::size_t eve, const LocationUncertainty &u, std::size_t count,
                          const ArrayGeometry &geo)
        {
            const PolarLocation center = u.center_polar();
            const auto [lo, hi] = u.angle_span();
            const std::size_t angles = (hi > lo) ? count : 1;
            for (std::size_t i = 0; i < angles; ++i)
            {
                const double angle =
                    (angles < 2) ? center.angle() : lo + (hi - lo) * static_cast<double>(i) / (angles - 1.0);
                const double projection = center.range() * std::cos(angle - center.angle());
                const auto chord = ray_chord(u, angle);
                if (!chord || chord->max - chord->min < 1e-12)
                {
                    model.constraints.push_back(point_constraint(eve, PolarLocation(angle, projection), geo));
                    continue;
                }
                for (double r : {chord->min, chord->max, projection})
                    model.constraints.push_back(point_constraint(eve, PolarLocation(angle, r), geo));
            }
        }
    } // namespace

    SecrecyModel build_secrecy_model(const Scenario &scenario, Scheme scheme, const SchemeOptions &options)
    {
        if (scheme == Scheme::sampling && options.sampling_count == 0)
            throw std::invalid_argument("sampling scheme requires at least one sample per Eve");
        const ArrayGeometry &geo = scenario.geometry();
        const std::size_t n = geo.element_count();

        SecrecyModel model;
        for (std::size_t m = 0; m < scenario.eve_count(); ++m)
        {
            const LocationUncertainty &u = scenario.uncertainties()[m];
            switch (scheme)
            {
            case Scheme::non_robust:
                model.constraints.push_back(point_constraint(m, u.center_polar(), geo));
                break;
            case Scheme::sampling:
                add_sampling(model, m, u, options.sampling_count, geo);
                break;
            case Scheme::error_bound:
            {
                const double eps = options.epsilon_override ? *options.epsilon_override
                                                            : max_csv_error_over_disc(u, geo, options.error_grid);
                model.constraints.push_back(ball_constraint(m, u.center_polar(), eps, geo));
                break;
            }
            case Scheme::partition_only:
                for (const auto &cell : partition_region(u, n))
                {
                    const double eps = max_csv_error_over_sector(cell.surrogate(), u, cell.angle_min, cell.angle_max,
                                                                 geo, options.cell_error_grid);
                    model.constraints.push_back(ball_constraint(m, cell.surrogate(), eps, geo));
                }
                break;
            case Scheme::refined_only:
                model.constraints.push_back(box_constraint(m, refined_disc_model(u, geo)));
                break;
            case Scheme::proposed:
                for (const auto &cell : partition_region(u, n))
                    model.constraints.push_back(box_constraint(m, refined_cell_model(cell, geo)));
                break;
            }
        }
        return model;
    }

    double secrecy_margin(const SecrecyConstraint &c, const Scenario &scenario, const Eigen::VectorXcd &w)
    {
        const double kappa = scenario.kappa();
        const double t = scenario.threshold(c.eve).gamma - kappa * kappa * w.squaredNorm();
        switch (c.kind)
        {
        case SecrecyConstraint::Kind::point:
            return error_bound_margin(t, c.steering, 0.0, w);
        case SecrecyConstraint::Kind::ball:
            return error_bound_margin(t, c.steering, c.epsilon, w);
        case SecrecyConstraint::Kind::box:
            return refined_margin(t, *c.cell, w);
        }
        return 0.0;
    }

    double min_secrecy_margin(const SecrecyModel &model, const Scenario &scenario, const Beamformers &w)
    {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto &c : model.constraints)
            for (const auto &wk : w)
                worst = std::min(worst, secrecy_margin(c, scenario, wk));
        return worst;
    }

    Initialization initialize_beamformers(const Scenario &scenario, const SecrecyModel &model, double tolerance)
    {
        const std::size_t k_count = scenario.bob_count();
        Beamformers mrt;
        for (const auto &h : scenario.bob_channels())
            mrt.push_back(std::sqrt(scenario.p_max() / static_cast<double>(k_count)) * h.vector / h.vector.norm());

        auto scaled = [&](double c) {
            Beamformers w = mrt;
            for (auto &wk : w)
                wk *= c;
            return w;
        };
        auto feasible = [&](double c) { return min_secrecy_margin(model, scenario, scaled(c)) >= 0.0; };

        if (!feasible(0.0))
            throw std::logic_error("initialize_beamformers: zero beamformers violate the secrecy model");
        if (feasible(1.0))
            return {mrt, 1.0};

        double lo = 0.0;
        double hi = 1.0;
        while (hi - lo > tolerance)
        {
            const double mid = 0.5 * (lo + hi);
            (feasible(mid) ? lo : hi) = mid;
        }
        return {scaled(lo), lo};
    }

    // ---------------------------------------------------------------- surrogates

    double SingleSurrogate::value(const Eigen::VectorXcd &w) const
    {
        return std::norm(iota) + 2.0 * (std::conj(iota) * (h.dot(w) - iota)).real();
    }

    Eigen::VectorXd SingleSurrogate::gradient() const
    {
        const Eigen::Index n = h.size();
        Eigen::VectorXd g(2 * n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const std::complex<double> c = std::conj(iota) * std::conj(h(i));
            g(i) = 2.0 * c.real();
            g(n + i) = -2.0 * c.imag();
        }
        return g;
    }

    SingleSurrogate sca_surrogate_single(const Eigen::VectorXcd &w_prev, const Eigen::VectorXcd &h)
    {
        if (w_prev.size() != h.size())
            throw std::invalid_argument("sca_surrogate_single: dimension mismatch");
        return {h.dot(w_prev), h};
    }

    std::vector<double> MultiSurrogate::rates(const Beamformers &w) const
    {
        std::vector<double> out(terms.size());
        for (std::size_t k = 0; k < terms.size(); ++k)
        {
            double received = 0.0;
            for (const auto &wi : w)
                received += std::norm(channels[k].dot(wi));
            out[k] = terms[k].constant + terms[k].linear.dot(w[k]).real() - terms[k].quadratic * received;
        }
        return out;
    }

    double MultiSurrogate::sum(const Beamformers &w) const
    {
        double total = 0.0;
        for (double r : rates(w))
            total += r;
        return total;
    }

    MultiSurrogate sca_surrogate_multi(const Beamformers &w_prev, const std::vector<Eigen::VectorXcd> &channels,
                                       double noise_power)
    {
        if (w_prev.empty() || w_prev.size() != channels.size())
            throw std::invalid_argument("sca_surrogate_multi: one beamformer per channel is required");
        const double ln2 = std::log(2.0);
        MultiSurrogate s;
        s.channels = channels;
        s.noise_power = noise_power;
        for (std::size_t k = 0; k < channels.size(); ++k)
        {
            const std::complex<double> iota = channels[k].dot(w_prev[k]);
            double nu = noise_power;
            for (std::size_t i = 0; i < w_prev.size(); ++i)
                if (i != k)
                    nu += std::norm(channels[k].dot(w_prev[i]));
            const double rho = std::norm(iota) / nu;
            const double c = std::norm(iota) / (nu * (std::norm(iota) + nu)) / ln2;
            MultiSurrogateTerm t;
            t.constant = (std::log1p(rho) - rho) / ln2 - c * noise_power;
            t.linear = (2.0 / (nu * ln2)) * iota * channels[k];
            t.quadratic = c;
            s.terms.push_back(std::move(t));
        }
        return s;
    }

    // ---------------------------------------------------------------- scheme solve

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

        struct Lowered
        {
            conic::ConicProgram program;
            std::vector<ComplexVector> w;
            std::vector<std::size_t> rate_aux; // t_k >= sum_i |h_k^H w_i|^2 (K >= 2)
        };

        bool ball_uses_psd(const LmiOptions &o, std::size_t n)
        {
            return o.lowering == ErrorBoundLowering::psd ||
                   (o.lowering == ErrorBoundLowering::automatic && n <= o.psd_max_elements);
        }

        Lowered lower(const Scenario &scenario, const SecrecyModel &model, const std::vector<Eigen::VectorXcd> &h,
                      const SchemeOptions &options)
        {
            const std::size_t n = scenario.geometry().element_count();
            const std::size_t k_count = scenario.bob_count();
            const double kappa = scenario.kappa();
            const bool psd_ball = ball_uses_psd(options.lmi, n);

            bool need_norm = false;
            bool need_power = false;
            for (const auto &c : model.constraints)
            {
                const bool as_point = c.kind == SecrecyConstraint::Kind::point ||
                                      (c.kind == SecrecyConstraint::Kind::ball && c.epsilon == 0.0);
                if (as_point)
                    need_norm = need_norm || kappa > 0.0;
                else if (c.kind == SecrecyConstraint::Kind::ball)
                {
                    need_norm = need_norm || !psd_ball;
                    need_power = need_power || (psd_ball && kappa > 0.0);
                }
                else
                    need_power = need_power || kappa > 0.0;
            }

            Lowered out;
            conic::ConicProgram &p = out.program;
            for (std::size_t k = 0; k < k_count; ++k)
                out.w.push_back(p.add_complex_vector(n));

            std::vector<LinearExpr> all;
            for (const auto &wk : out.w)
                for (auto &e : stacked(wk))
                    all.push_back(std::move(e));
            p.add_soc(LinearExpr(std::sqrt(scenario.p_max())), all);

            std::vector<std::optional<std::size_t>> norm(k_count);
            std::vector<std::optional<std::size_t>> power(k_count);
            for (std::size_t k = 0; k < k_count; ++k)
            {
                if (need_norm)
                {
                    norm[k] = p.add_scalar();
                    p.add_soc(LinearExpr::variable(*norm[k]), stacked(out.w[k]));
                }
                if (need_power)
                {
                    power[k] = p.add_scalar();
                    p.add_rotated_soc(LinearExpr::variable(*power[k]), LinearExpr(1.0), stacked(out.w[k]));
                }
            }

            for (const auto &c : model.constraints)
            {
                const double gamma = scenario.threshold(c.eve).gamma;
                for (std::size_t k = 0; k < k_count; ++k)
                {
                    const ThresholdForm threshold{gamma, kappa, kappa > 0.0 ? power[k] : std::nullopt};
                    const bool as_point = c.kind == SecrecyConstraint::Kind::point ||
                                          (c.kind == SecrecyConstraint::Kind::ball && c.epsilon == 0.0);
                    if (as_point)
                    {
                        const ComplexExpr e = out.w[k].inner(c.steering);
                        std::vector<LinearExpr> x{e.re, e.im};
                        if (kappa > 0.0)
                            x.push_back(LinearExpr::variable(*norm[k], kappa));
                        p.add_soc(LinearExpr(std::sqrt(gamma)), x);
                    }
                    else if (c.kind == SecrecyConstraint::Kind::ball)
                        add_error_bound_constraint(p, threshold, c.steering, c.epsilon, out.w[k], norm[k], options.lmi);
                    else
                        add_refined_constraint(p, threshold, *c.cell, out.w[k]);
                }
            }

            if (k_count >= 2)
                for (std::size_t k = 0; k < k_count; ++k)
                {
                    const std::size_t t = p.add_scalar();
                    std::vector<LinearExpr> x;
                    for (const auto &wi : out.w)
                    {
                        const ComplexExpr e = wi.inner(h[k]);
                        x.push_back(e.re);
                        x.push_back(e.im);
                    }
                    p.add_rotated_soc(LinearExpr::variable(t), LinearExpr(1.0), x);
                    out.rate_aux.push_back(t);
                }
            return out;
        }

        LinearExpr sca_objective(const Lowered &lowered, const Beamformers &w, const std::vector<Eigen::VectorXcd> &h)
        {
            LinearExpr obj;
            if (w.size() == 1)
            {
                // Linearization of |h^H w|^2, scaled to a unit-norm gradient
                const std::complex<double> iota = h[0].dot(w[0]);
                const double scale = std::abs(iota) * h[0].norm();
                const ComplexExpr e = lowered.w[0].inner(h[0]);
                if (scale > 0.0)
                {
                    obj += (iota.real() / scale) * e.re;
                    obj += (iota.imag() / scale) * e.im;
                }
                else
                    obj += (1.0 / h[0].norm()) * e.re;
                return obj;
            }
            const MultiSurrogate s = sca_surrogate_multi(w, h, 1.0);
            for (std::size_t k = 0; k < w.size(); ++k)
            {
                obj += lowered.w[k].inner(s.terms[k].linear).re;
                obj += LinearExpr::variable(lowered.rate_aux[k], -s.terms[k].quadratic);
            }
            return obj;
        }

        bool verified_feasible(const Scenario &scenario, const SecrecyModel &model, const Beamformers &w)
        {
            double power = 0.0;
            for (const auto &wk : w)
                power += wk.squaredNorm();
            if (power > scenario.p_max() * (1.0 + 1e-6))
                return false;
            double root = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < scenario.eve_count(); ++m)
                root = std::min(root, std::sqrt(scenario.threshold(m).gamma));
            return model.constraints.empty() || min_secrecy_margin(model, scenario, w) >= -1e-6 * root;
        }
    } // namespace

    SolveReport solve_scheme(const Scenario &scenario, Scheme scheme, const SchemeOptions &options)
    {
        const auto start = std::chrono::steady_clock::now();
        SolveReport report;
        report.scheme = scheme;
        report.solver = options.solver;

        const SecrecyModel model = build_secrecy_model(scenario, scheme, options);
        report.secrecy_constraints = model.constraints.size() * scenario.bob_count();
        report.error_bounds.assign(scenario.eve_count(), {});
        for (const auto &c : model.constraints)
            if (c.kind == SecrecyConstraint::Kind::ball)
                report.error_bounds[c.eve].push_back(c.epsilon);

        // Channels normalized by the noise amplitude
        const double noise_amp = std::sqrt(scenario.noise_power());
        std::vector<Eigen::VectorXcd> h;
        for (const auto &ch : scenario.bob_channels())
            h.push_back(ch.vector / noise_amp);

        const Initialization init = initialize_beamformers(scenario, model, options.bisection_tolerance);
        report.initial_scale = init.scale;
        Beamformers w = init.beamformers;
        double rate = sum_rate(w, h, 1.0);
        report.trajectory.push_back(rate);

        const Lowered lowered = lower(scenario, model, h, options);
        conic::ConicSolver solver(lowered.program, options.solver);

        report.status = ReportStatus::max_iterations;
        for (int j = 1; j <= options.max_iterations; ++j)
        {
            solver.set_objective(sca_objective(lowered, w, h));
            const conic::ConicSolution sol = solver.solve();
            if (sol.status == conic::SolveStatus::primal_infeasible)
            {
                report.status = ReportStatus::infeasible;
                report.failed_iteration = j;
                report.message = "subproblem infeasible";
                break;
            }
            Beamformers next;
            for (const auto &wk : lowered.w)
                next.push_back(wk.value(sol.x));
            if (sol.status != conic::SolveStatus::optimal)
            {
                // A stalled solve is still usable when its best iterate is verifiably feasible
                if (sol.status == conic::SolveStatus::dual_infeasible || sol.x.size() == 0 ||
                    !verified_feasible(scenario, model, next))
                {
                    report.status = ReportStatus::solver_failure;
                    report.failed_iteration = j;
                    report.message = "conic solver: " + conic::to_string(sol.status);
                    break;
                }
                ++report.inaccurate_solves;
            }
            const double next_rate = sum_rate(next, h, 1.0);
            if (next_rate < rate)
            {
                // No ascent left at solver accuracy
                report.status = ReportStatus::optimal;
                break;
            }
            const double gain = next_rate - rate;
            w = std::move(next);
            rate = next_rate;
            report.trajectory.push_back(rate);
            report.iterations = j;
            if (gain < options.tolerance)
            {
                report.status = ReportStatus::optimal;
                break;
            }
        }

        report.beamformers = std::move(w);
        report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    }

} // namespace nfsec
