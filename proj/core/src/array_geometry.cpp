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

#include "nfsec/array_geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nfsec
{
    PolarLocation::PolarLocation(double angle, double range) : angle_(angle), range_(range)
    {
        if (!(range > 0.0) || !std::isfinite(range))
            throw std::invalid_argument("PolarLocation: range must be positive, got " + std::to_string(range));
        if (!(std::abs(angle) < kPi / 2.0))
            throw std::invalid_argument("PolarLocation: angle must lie in (-pi/2, pi/2), got " + std::to_string(angle));
    }

    CartesianPoint PolarLocation::to_cartesian() const noexcept
    {
        return {range_ * std::cos(angle_), range_ * std::sin(angle_)};
    }

    std::vector<double> antenna_coords(std::size_t element_count, double wavelength)
    {
        if (element_count == 0)
            throw std::invalid_argument("antenna_coords: element count must be at least 1");
        if (!(wavelength > 0.0))
            throw std::invalid_argument("antenna_coords: wavelength must be positive");

        const double d = wavelength / 2.0;
        const double n_total = static_cast<double>(element_count);
        std::vector<double> coords(element_count);
        for (std::size_t n = 1; n <= element_count; ++n)
            coords[n - 1] = (2.0 * static_cast<double>(n) - n_total - 1.0) * d / 2.0;
        return coords;
    }

    ArrayGeometry::ArrayGeometry(std::size_t element_count, double wavelength) : wavelength_(wavelength)
    {
        const auto u = antenna_coords(element_count, wavelength);
        coords_ = Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
    }

    ArrayGeometry ArrayGeometry::from_frequency(std::size_t element_count, double frequency_hz)
    {
        if (!(frequency_hz > 0.0))
            throw std::invalid_argument("ArrayGeometry: carrier frequency must be positive");
        return ArrayGeometry(element_count, kSpeedOfLight / frequency_hz);
    }

    PolarLocation cart_to_polar(CartesianPoint q)
    {
        if (!(q.x > 0.0))
            throw std::invalid_argument("cart_to_polar: target must lie in front of the array (x > 0)");
        return PolarLocation(std::atan(q.y / q.x), std::hypot(q.x, q.y));
    }

    SteeringVector steering_vector(const PolarLocation &loc, const ArrayGeometry &geo)
    {
        const auto &u = geo.element_coords();
        const Eigen::Index n = u.size();
        const double k = geo.wavenumber();
        const double s = std::sin(loc.angle());
        const double c2 = std::cos(loc.angle()) * std::cos(loc.angle());
        const double inv_2r = 1.0 / (2.0 * loc.range());
        const double amp = 1.0 / std::sqrt(static_cast<double>(n));

        Eigen::VectorXcd a(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double phase = k * (u(i) * s - u(i) * u(i) * c2 * inv_2r);
            a(i) = std::polar(amp, phase);
        }
        return SteeringVector(std::move(a));
    }

    SteeringVector steering_vector_exact(CartesianPoint q, const ArrayGeometry &geo)
    {
        const auto &u = geo.element_coords();
        const Eigen::Index n = u.size();
        const double k = geo.wavenumber();
        const double r0 = std::hypot(q.x, q.y);
        const double amp = 1.0 / std::sqrt(static_cast<double>(n));

        Eigen::VectorXcd a(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            // Difference of distances computed as (d_n^2 - r0^2) / (d_n + r0) to avoid cancellation at long range
            const double dy = q.y - u(i);
            const double dn = std::hypot(q.x, dy);
            const double diff = (u(i) * u(i) - 2.0 * q.y * u(i)) / (dn + r0);
            a(i) = std::polar(amp, -k * diff);
        }
        return SteeringVector(std::move(a));
    }

    std::complex<double> steering_inner(const ArrayGeometry &geo, double angle, double range,
                                        const Eigen::Ref<const Eigen::VectorXcd> &w)
    {
        const auto &u = geo.element_coords();
        const Eigen::Index n = u.size();
        const double k = geo.wavenumber();
        const double s = std::sin(angle);
        const double c2 = std::cos(angle) * std::cos(angle);
        const double inv_2r = 1.0 / (2.0 * range);

        // conj(a_n) w_n with a_n = exp(j phase_n) / sqrt(N)
        double re = 0.0, im = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double phase = k * (u(i) * s - u(i) * u(i) * c2 * inv_2r);
            const double cp = std::cos(phase), sp = std::sin(phase);
            const double wr = w(i).real(), wi = w(i).imag();
            re += cp * wr + sp * wi;
            im += cp * wi - sp * wr;
        }
        const double amp = 1.0 / std::sqrt(static_cast<double>(n));
        return {re * amp, im * amp};
    }

    double free_space_reference_gain(double wavelength)
    {
        const double g = wavelength / (4.0 * kPi);
        return g * g;
    }

    LosChannel los_channel(CartesianPoint q, double reference_gain, const ArrayGeometry &geo)
    {
        if (!(reference_gain > 0.0))
            throw std::invalid_argument("los_channel: reference gain must be positive");
        const PolarLocation loc = cart_to_polar(q);
        const double r = loc.range();
        const std::complex<double> gain = std::polar(std::sqrt(reference_gain) / r, -geo.wavenumber() * r);
        SteeringVector a = steering_vector(loc, geo);
        const double sqrt_n = std::sqrt(static_cast<double>(geo.element_count()));
        Eigen::VectorXcd h = (sqrt_n * std::conj(gain)) * a.entries();
        return LosChannel{gain, std::move(a), std::move(h)};
    }

} // namespace nfsec
