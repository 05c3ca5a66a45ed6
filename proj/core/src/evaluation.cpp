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

#include "nfsec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace nfsec
{
    std::vector<double> bob_rates(const std::vector<Eigen::VectorXcd> &w, const std::vector<Eigen::VectorXcd> &channels,
                                  double noise_power)
    {
        if (w.size() != channels.size())
            throw std::invalid_argument("bob_rates: one beamformer per channel is required");
        std::vector<double> rates(w.size(), 0.0);
        for (std::size_t k = 0; k < w.size(); ++k)
        {
            double interference = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (i != k)
                    interference += std::norm(channels[k].dot(w[i]));
            rates[k] = std::log2(1.0 + std::norm(channels[k].dot(w[k])) / (interference + noise_power));
        }
        return rates;
    }

    double sum_rate(const std::vector<Eigen::VectorXcd> &w, const std::vector<Eigen::VectorXcd> &channels,
                    double noise_power)
    {
        double total = 0.0;
        for (double r : bob_rates(w, channels, noise_power))
            total += r;
        return total;
    }

    double eve_rate(const Eigen::VectorXcd &w, const Eigen::VectorXcd &eve_channel, double noise_power)
    {
        return std::log2(1.0 + std::norm(eve_channel.dot(w)) / noise_power);
    }

    namespace
    {
        double lerp(double lo, double hi, std::size_t i, std::size_t count)
        {
            if (count < 2)
                return 0.5 * (lo + hi);
            return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        }

        struct ScanPoint
        {
            double angle;
            double t;
        };

        // Grid over angles [a_lo, a_hi] and normalized chord positions [t_lo, t_hi]; updates the per-beam
        // maxima and returns the location of the largest value over all beams
        void scan(const std::vector<Eigen::VectorXcd> &w, const LocationUncertainty &u, const ArrayGeometry &geo,
                  double a_lo, double a_hi, double t_lo, double t_hi, std::size_t na, std::size_t nt,
                  std::vector<LeakagePeak> &peaks, std::vector<ScanPoint> &where)
        {
            for (std::size_t i = 0; i < na; ++i)
            {
                const double angle = lerp(a_lo, a_hi, i, na);
                const auto chord = ray_chord(u, angle);
                if (!chord)
                    continue;
                for (std::size_t j = 0; j < nt; ++j)
                {
                    const double t = lerp(t_lo, t_hi, j, nt);
                    const double range = chord->min + t * (chord->max - chord->min);
                    const Eigen::VectorXcd a = steering_vector(PolarLocation(angle, range), geo).entries();
                    for (std::size_t k = 0; k < w.size(); ++k)
                    {
                        const double v = std::norm(a.dot(w[k]));
                        if (v > peaks[k].value)
                        {
                            peaks[k] = {v, angle, range};
                            where[k] = {angle, t};
                        }
                    }
                }
            }
        }
    } // namespace

    std::vector<LeakagePeak> worst_case_leakage(const std::vector<Eigen::VectorXcd> &w, const LocationUncertainty &u,
                                                const ArrayGeometry &geo, std::size_t resolution)
    {
        if (resolution < 2)
            throw std::invalid_argument("worst_case_leakage: resolution must be at least 2");
        const PolarLocation c = u.center_polar();
        std::vector<LeakagePeak> peaks(w.size(), LeakagePeak{-1.0, c.angle(), c.range()});
        std::vector<ScanPoint> where(w.size(), ScanPoint{c.angle(), 0.5});

        if (u.radius() == 0.0)
        {
            const Eigen::VectorXcd a = steering_vector(c, geo).entries();
            for (std::size_t k = 0; k < w.size(); ++k)
                peaks[k].value = std::norm(a.dot(w[k]));
            return peaks;
        }

        const auto [lo, hi] = u.angle_span();
        scan(w, u, geo, lo, hi, 0.0, 1.0, resolution, resolution, peaks, where);

        const double da = (hi - lo) / static_cast<double>(resolution - 1);
        const double dt = 1.0 / static_cast<double>(resolution - 1);
        for (std::size_t k = 0; k < w.size(); ++k)
        {
            std::vector<LeakagePeak> refined(1, peaks[k]);
            std::vector<ScanPoint> refined_at(1, where[k]);
            scan({w[k]}, u, geo, std::max(lo, where[k].angle - da), std::min(hi, where[k].angle + da),
                 std::max(0.0, where[k].t - dt), std::min(1.0, where[k].t + dt), 21, 21, refined, refined_at);
            peaks[k] = refined[0];
            peaks[k].value = std::max(0.0, peaks[k].value);
        }
        return peaks;
    }

    LeakagePeak worst_case_leakage(const Eigen::VectorXcd &w, const LocationUncertainty &u, const ArrayGeometry &geo,
                                   std::size_t resolution)
    {
        return worst_case_leakage(std::vector<Eigen::VectorXcd>{w}, u, geo, resolution).front();
    }

    std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept
    {
        // splitmix64 finalizer applied to a Weyl sequence indexed by the trial
        std::uint64_t z = seed + (trial + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    namespace
    {
        struct TrialCounts
        {
            std::size_t secure = 0;
            std::size_t in_disc = 0;
            std::size_t secure_in_disc = 0;
        };

        TrialCounts run_trials(const std::vector<Eigen::VectorXcd> &w, const Scenario &scenario, std::size_t begin,
                               std::size_t end, std::uint64_t seed)
        {
            const ArrayGeometry &geo = scenario.geometry();
            const double n = static_cast<double>(geo.element_count());
            const double kappa2 = scenario.kappa() * scenario.kappa();
            // Leakage power at which the eavesdropping rate reaches rate_max
            const double cap = scenario.noise_power() * (std::exp2(scenario.rate_max()) - 1.0);

            std::vector<double> power(w.size());
            for (std::size_t k = 0; k < w.size(); ++k)
                power[k] = w[k].squaredNorm();

            TrialCounts counts;
            for (std::size_t trial = begin; trial < end; ++trial)
            {
                std::mt19937_64 rng(trial_seed(seed, trial));
                bool secure = true;
                bool inside = true;
                for (std::size_t m = 0; m < scenario.eve_count(); ++m)
                {
                    const LocationUncertainty &u = scenario.uncertainties()[m];
                    std::normal_distribution<double> noise(0.0, u.sigma());
                    const CartesianPoint q{u.center().x + noise(rng), u.center().y + noise(rng)};
                    inside = inside && u.contains(q);
                    if (!secure)
                        continue;
                    if (!(q.x > 0.0))
                    {
                        // Behind the aperture plane: not covered by the channel model, counted as a violation
                        secure = false;
                        continue;
                    }
                    const LosChannel h = los_channel(q, scenario.reference_gain(), geo);
                    const double gain_sq = std::norm(h.gain);
                    for (std::size_t k = 0; k < w.size() && secure; ++k)
                    {
                        const double leak = std::norm(h.response(w[k])) + kappa2 * n * gain_sq * power[k];
                        secure = leak <= cap;
                    }
                }
                counts.secure += secure ? 1 : 0;
                counts.in_disc += inside ? 1 : 0;
                counts.secure_in_disc += (secure && inside) ? 1 : 0;
            }
            return counts;
        }
    } // namespace

    SecureProbability secure_probability(const std::vector<Eigen::VectorXcd> &w, const Scenario &scenario,
                                         std::size_t trials, std::uint64_t seed, std::size_t workers)
    {
        if (trials == 0)
            throw std::invalid_argument("secure_probability: trials must be positive");
        if (w.size() != scenario.bob_count())
            throw std::invalid_argument("secure_probability: one beamformer per Bob is required");
        if (workers == 0)
            workers = std::max(1u, std::thread::hardware_concurrency());
        workers = std::min(workers, trials);

        std::vector<TrialCounts> parts(workers);
        if (workers == 1)
            parts[0] = run_trials(w, scenario, 0, trials, seed);
        else
        {
            std::vector<std::thread> pool;
            for (std::size_t i = 0; i < workers; ++i)
            {
                const std::size_t begin = trials * i / workers;
                const std::size_t end = trials * (i + 1) / workers;
                pool.emplace_back([&, i, begin, end] { parts[i] = run_trials(w, scenario, begin, end, seed); });
            }
            for (auto &t : pool)
                t.join();
        }

        TrialCounts total;
        for (const auto &p : parts)
        {
            total.secure += p.secure;
            total.in_disc += p.in_disc;
            total.secure_in_disc += p.secure_in_disc;
        }
        SecureProbability out;
        out.trials = trials;
        out.seed = seed;
        out.in_disc_trials = total.in_disc;
        out.full = static_cast<double>(total.secure) / static_cast<double>(trials);
        out.in_disc = total.in_disc == 0 ? 1.0
                                         : static_cast<double>(total.secure_in_disc) / static_cast<double>(total.in_disc);
        return out;
    }

    BeamPattern beam_pattern(const std::vector<Eigen::VectorXcd> &w, double x_min, double x_max, double y_min,
                             double y_max, std::size_t nx, std::size_t ny, const ArrayGeometry &geo,
                             std::optional<double> reference_gain)
    {
        if (!(x_min > 0.0) || x_max < x_min || y_max < y_min || nx == 0 || ny == 0)
            throw std::invalid_argument("beam_pattern: grid must lie in x > 0 with positive size");
        BeamPattern bp;
        for (std::size_t i = 0; i < nx; ++i)
            bp.xs.push_back(lerp(x_min, x_max, i, nx));
        for (std::size_t i = 0; i < ny; ++i)
            bp.ys.push_back(lerp(y_min, y_max, i, ny));
        if (nx == 1)
            bp.xs[0] = x_min;
        if (ny == 1)
            bp.ys[0] = y_min;

        const double n = static_cast<double>(geo.element_count());
        bp.gain.reserve(nx * ny);
        for (double y : bp.ys)
            for (double x : bp.xs)
            {
                const PolarLocation p = cart_to_polar({x, y});
                const Eigen::VectorXcd a = steering_vector(p, geo).entries();
                double g = 0.0;
                for (const auto &wk : w)
                    g += std::norm(a.dot(wk));
                if (reference_gain)
                    g *= n * *reference_gain / (p.range() * p.range());
                bp.gain.push_back(g);
            }
        return bp;
    }

} // namespace nfsec
