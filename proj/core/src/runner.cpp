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

#include "nfsec/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace nfsec
{
    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.8e", value);
        return buf;
    }

    bool PointResult::failed() const
    {
        return !error.empty() || solve.status == ReportStatus::infeasible ||
               solve.status == ReportStatus::solver_failure;
    }

    EvalReport evaluate(const Scenario &scenario, const Beamformers &w, std::size_t grid, std::size_t trials,
                        std::uint64_t seed)
    {
        EvalReport r;
        std::vector<Eigen::VectorXcd> h;
        for (const auto &ch : scenario.bob_channels())
            h.push_back(ch.vector);
        r.bob_rates = bob_rates(w, h, scenario.noise_power());
        for (double v : r.bob_rates)
            r.sum_rate += v;
        for (const auto &wk : w)
            r.total_power += wk.squaredNorm();

        const double n = static_cast<double>(scenario.geometry().element_count());
        const double kappa2 = scenario.kappa() * scenario.kappa();
        for (std::size_t m = 0; m < scenario.eve_count(); ++m)
        {
            const LeakageThreshold &t = scenario.threshold(m);
            const auto peaks = worst_case_leakage(w, scenario.uncertainties()[m], scenario.geometry(), grid);
            double ratio = 0.0;
            double rate = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k)
            {
                ratio = std::max(ratio, peaks[k].value / t.gamma);
                const double power = n * t.eve_gain_sq * (peaks[k].value + kappa2 * w[k].squaredNorm());
                rate = std::max(rate, std::log2(1.0 + power / scenario.noise_power()));
            }
            r.leakage_ratio.push_back(ratio);
            r.worst_eve_rate.push_back(rate);
        }
        r.secure = secure_probability(w, scenario, trials, seed, 1);
        return r;
    }

    namespace
    {
        struct Task
        {
            std::optional<double> sweep_value;
            Scheme scheme;
        };

        PointResult run_task(const ScenarioConfig &config, const Task &task)
        {
            PointResult out;
            out.sweep_value = task.sweep_value;
            out.scheme = task.scheme;
            try
            {
                const ScenarioConfig c =
                    task.sweep_value ? with_sweep_value(config, config.sweep->parameter, *task.sweep_value) : config;
                const Scenario scenario = make_scenario(c);
                out.solve = solve_scheme(scenario, task.scheme, make_scheme_options(c));
                out.eval = evaluate(scenario, out.solve.beamformers, c.grid, c.trials, c.seed);
            }
            catch (const std::exception &e)
            {
                out.error = e.what();
            }
            return out;
        }

        std::ofstream open_output(const std::filesystem::path &path)
        {
            std::ofstream f(path);
            if (!f)
                throw std::runtime_error("cannot write '" + path.string() + "'");
            return f;
        }

        void write_results(const ScenarioConfig &config, const std::vector<PointResult> &points,
                           const std::filesystem::path &dir)
        {
            std::ofstream f = open_output(dir / "results.csv");
            f << "sweep_parameter,sweep_value,scheme,status,sum_rate";
            for (std::size_t k = 0; k < config.bobs.size(); ++k)
                f << ",rate_bob_" << k + 1;
            f << ",total_power";
            for (std::size_t m = 0; m < config.eves.size(); ++m)
                f << ",leakage_ratio_eve_" << m + 1;
            for (std::size_t m = 0; m < config.eves.size(); ++m)
                f << ",worst_eve_rate_eve_" << m + 1;
            f << ",secure_probability,secure_probability_in_disc,trials,seed,iterations,wall_time\n";

            for (const auto &p : points)
            {
                f << (config.sweep ? config.sweep->parameter : "none") << ','
                  << (p.sweep_value ? format_number(*p.sweep_value) : "") << ',' << to_string(p.scheme) << ',';
                if (!p.error.empty())
                {
                    f << "error";
                    const std::size_t blanks = 1 + config.bobs.size() + 1 + 2 * config.eves.size() + 6;
                    for (std::size_t i = 0; i < blanks; ++i)
                        f << ',';
                    f << '\n';
                    continue;
                }
                f << to_string(p.solve.status) << ',' << format_number(p.eval.sum_rate);
                for (double r : p.eval.bob_rates)
                    f << ',' << format_number(r);
                f << ',' << format_number(p.eval.total_power);
                for (double v : p.eval.leakage_ratio)
                    f << ',' << format_number(v);
                for (double v : p.eval.worst_eve_rate)
                    f << ',' << format_number(v);
                f << ',' << format_number(p.eval.secure.full) << ',' << format_number(p.eval.secure.in_disc) << ','
                  << p.eval.secure.trials << ',' << p.eval.secure.seed << ',' << p.solve.iterations << ','
                  << format_number(p.solve.wall_time) << '\n';
            }
        }

        void write_trajectory(const ScenarioConfig &config, const std::vector<PointResult> &points,
                              const std::filesystem::path &dir)
        {
            std::ofstream f = open_output(dir / "trajectory.csv");
            f << "sweep_parameter,sweep_value,scheme,iteration,sum_rate\n";
            for (const auto &p : points)
                for (std::size_t i = 0; i < p.solve.trajectory.size(); ++i)
                    f << (config.sweep ? config.sweep->parameter : "none") << ','
                      << (p.sweep_value ? format_number(*p.sweep_value) : "") << ',' << to_string(p.scheme) << ','
                      << i << ',' << format_number(p.solve.trajectory[i]) << '\n';
        }

        // Beam patterns of the first sweep point
        void write_patterns(const ScenarioConfig &config, const std::vector<PointResult> &points,
                            const std::filesystem::path &dir)
        {
            for (const auto &p : points)
            {
                if (p.sweep_value && config.sweep && *p.sweep_value != config.sweep->values.front())
                    continue;
                if (!p.error.empty() || p.solve.beamformers.empty())
                    continue;
                const ScenarioConfig c =
                    p.sweep_value ? with_sweep_value(config, config.sweep->parameter, *p.sweep_value) : config;
                const ArrayGeometry geo(c.elements, wavelength_from_ghz(c.frequency_ghz));
                const BeamPatternSpec &b = c.beampattern;
                const BeamPattern bp =
                    beam_pattern(p.solve.beamformers, b.x_min, b.x_max, b.y_min, b.y_max, b.nx, b.ny, geo);
                std::ofstream f = open_output(dir / ("beampattern_" + to_string(p.scheme) + ".csv"));
                f << "x,y,gain\n";
                for (std::size_t iy = 0; iy < bp.ys.size(); ++iy)
                    for (std::size_t ix = 0; ix < bp.xs.size(); ++ix)
                        f << format_number(bp.xs[ix]) << ',' << format_number(bp.ys[iy]) << ','
                          << format_number(bp.at(iy, ix)) << '\n';
            }
        }
    } // namespace

    RunSummary run(const ScenarioConfig &config, const RunOptions &options)
    {
        validate(config);
        std::vector<Task> tasks;
        if (config.sweep)
        {
            for (double v : config.sweep->values)
                for (Scheme s : config.schemes)
                    tasks.push_back({v, s});
        }
        else
            for (Scheme s : config.schemes)
                tasks.push_back({std::nullopt, s});

        RunSummary summary;
        summary.points.resize(tasks.size());
        const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, tasks.size()));
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < tasks.size(); i = next++)
                summary.points[i] = run_task(config, tasks[i]);
        };
        if (workers == 1)
            worker();
        else
        {
            std::vector<std::thread> pool;
            for (std::size_t i = 0; i < workers; ++i)
                pool.emplace_back(worker);
            for (auto &t : pool)
                t.join();
        }

        bool all_failed = true;
        for (const auto &p : summary.points)
            all_failed = all_failed && p.failed();
        summary.exit_code = all_failed ? 2 : 0;

        if (options.write_files)
        {
            const std::filesystem::path dir(options.out_dir);
            std::filesystem::create_directories(dir);
            write_results(config, summary.points, dir);
            write_trajectory(config, summary.points, dir);
            write_patterns(config, summary.points, dir);
            std::ofstream echo = open_output(dir / "config_echo.json");
            echo << to_json(config);
        }
        return summary;
    }

} // namespace nfsec
