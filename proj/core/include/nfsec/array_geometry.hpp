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

#ifndef NFSEC_ARRAY_GEOMETRY_HPP
#define NFSEC_ARRAY_GEOMETRY_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace nfsec
{
    inline constexpr double kSpeedOfLight = 299792458.0; // [m/s]
    inline constexpr double kPi = 3.14159265358979323846;

    // Point in the array plane. The array lies on the y-axis, centered at the origin;
    // targets in front of the array have x > 0.
    struct CartesianPoint
    {
        double x = 0.0; // [m]
        double y = 0.0; // [m]
    };

    // Angle/range pair relative to the array center.
    // The angle is measured from the array normal (x-axis), positive toward +y.
    class PolarLocation
    {
    public:
        // Throws std::invalid_argument unless range > 0 and |angle| < pi/2
        PolarLocation(double angle, double range);

        double angle() const noexcept { return angle_; } // [rad]
        double range() const noexcept { return range_; } // [m]
        CartesianPoint to_cartesian() const noexcept;

    private:
        double angle_;
        double range_;
    };

    // Uniform linear array with half-wavelength spacing
    class ArrayGeometry
    {
    public:
        ArrayGeometry(std::size_t element_count, double wavelength);
        static ArrayGeometry from_frequency(std::size_t element_count, double frequency_hz);

        std::size_t element_count() const noexcept { return static_cast<std::size_t>(coords_.size()); }
        double wavelength() const noexcept { return wavelength_; }
        double spacing() const noexcept { return wavelength_ / 2.0; }
        double wavenumber() const noexcept { return 2.0 * kPi / wavelength_; }
        const Eigen::VectorXd &element_coords() const noexcept { return coords_; } // u_n [m]

    private:
        double wavelength_;
        Eigen::VectorXd coords_;
    };

    // u_n = (2n - N - 1) * lambda / 4 for n = 1..N
    std::vector<double> antenna_coords(std::size_t element_count, double wavelength);

    // Throws std::invalid_argument for points with x <= 0
    PolarLocation cart_to_polar(CartesianPoint q);

    // Unit-norm array response; every entry has magnitude 1/sqrt(N)
    class SteeringVector
    {
    public:
        explicit SteeringVector(Eigen::VectorXcd entries) : entries_(std::move(entries)) {}

        const Eigen::VectorXcd &entries() const noexcept { return entries_; }
        std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.size()); }
        std::complex<double> operator[](std::size_t n) const { return entries_(static_cast<Eigen::Index>(n)); }

    private:
        Eigen::VectorXcd entries_;
    };

    // Fresnel-approximated near-field response:
    // phase_n = k * (u_n sin(theta) - u_n^2 cos^2(theta) / (2r))
    SteeringVector steering_vector(const PolarLocation &loc, const ArrayGeometry &geo);

    // Response built from exact element distances: phase_n = -k * (|q - u_n| - |q - u_0|)
    SteeringVector steering_vector_exact(CartesianPoint q, const ArrayGeometry &geo);

    // a(theta, r)^H w without materializing the steering vector
    std::complex<double> steering_inner(const ArrayGeometry &geo, double angle, double range,
                                        const Eigen::Ref<const Eigen::VectorXcd> &w);

    // Line-of-sight channel toward a point target
    struct LosChannel
    {
        std::complex<double> gain; // sqrt(h0)/r * exp(-j 2 pi r / lambda)
        SteeringVector steering;
        Eigen::VectorXcd vector; // h, such that the received amplitude is h^H w = sqrt(N) gain a^H w

        // h^H w
        std::complex<double> response(const Eigen::Ref<const Eigen::VectorXcd> &w) const { return vector.dot(w); }
    };

    LosChannel los_channel(CartesianPoint q, double reference_gain, const ArrayGeometry &geo);

    // Free-space gain at 1 m: (lambda / (4 pi))^2
    double free_space_reference_gain(double wavelength);

} // namespace nfsec

#endif
