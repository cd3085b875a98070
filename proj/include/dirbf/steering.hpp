// SPDX-License-Identifier: Apache-2.0
//
// dirbf: directional beamforming analysis for sparse mmWave MIMO channels
// Copyright (C) 2026 The dirbf Authors
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

#pragma once

#include <complex>
#include <numbers>

#include "dirbf/errors.hpp"

namespace dirbf {

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Uniform linear array along the X axis.
class ArrayGeometry {
  public:
    explicit ArrayGeometry(int num_elements, double spacing_wavelengths = 0.5);

    int num_elements() const { return num_elements_; }
    double spacing_wavelengths() const { return spacing_wavelengths_; }

    // k*d = 2*pi*d/lambda, the phase advance per element per unit spatial frequency.
    double phase_step() const { return 2.0 * kPi * spacing_wavelengths_; }

    bool operator==(const ArrayGeometry &) const = default;

  private:
    int num_elements_;
    double spacing_wavelengths_;
};

// Azimuth in [0, 2*pi), elevation in (0, pi]. Elevation pi/2 keeps the path in
// the azimuth plane.
class AngleSpec {
  public:
    AngleSpec() = default;
    explicit AngleSpec(double azimuth_rad, double elevation_rad = kPi / 2);

    static AngleSpec from_degrees(double azimuth_deg, double elevation_deg = 90.0) {
        return AngleSpec(deg_to_rad(azimuth_deg), deg_to_rad(elevation_deg));
    }

    double azimuth_rad() const { return azimuth_; }
    double elevation_rad() const { return elevation_; }

    // sin(theta) cos(phi): the quantity the ULA actually resolves.
    double spatial_frequency() const;

    bool operator==(const AngleSpec &) const = default;

  private:
    double azimuth_ = kPi / 2;
    double elevation_ = kPi / 2;
};

// Constant-phase-offset vector: entry m = exp(j*m*k*d*sin(theta)cos(phi)) / sqrt(N).
CVector steering_vector(const ArrayGeometry &geom, const AngleSpec &angle);
CVector steering_vector_from_frequency(const ArrayGeometry &geom, double spatial_frequency);

// a^H b by direct summation.
std::complex<double> inner_product(const CVector &a, const CVector &b);

// a^H b for two CPO vectors in closed form (Dirichlet kernel). freq_a and freq_b
// are spatial frequencies; the separation is freq_b - freq_a.
std::complex<double> dirichlet_inner_product(const ArrayGeometry &geom, double freq_a, double freq_b);

// |v(angle1)^H v(angle2)| < tol.
bool electrically_orthogonal(const ArrayGeometry &geom, const AngleSpec &angle1, const AngleSpec &angle2,
                             double tol = 1e-9);

} // namespace dirbf
