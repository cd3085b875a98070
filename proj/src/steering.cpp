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

#include "dirbf/steering.hpp"

#include <cmath>

namespace dirbf {

ArrayGeometry::ArrayGeometry(int num_elements, double spacing_wavelengths)
    : num_elements_(num_elements), spacing_wavelengths_(spacing_wavelengths) {
    if (num_elements < 1)
        throw ArgumentError("array must have at least one element");
    if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
        throw ArgumentError("element spacing must be positive and finite");
}

AngleSpec::AngleSpec(double azimuth_rad, double elevation_rad) {
    if (!std::isfinite(azimuth_rad) || !std::isfinite(elevation_rad))
        throw ArgumentError("angles must be finite");
    if (!(elevation_rad > 0.0) || elevation_rad > kPi)
        throw ArgumentError("elevation must lie in (0, pi]");
    double az = std::fmod(azimuth_rad, 2.0 * kPi);
    if (az < 0.0)
        az += 2.0 * kPi;
    if (az >= 2.0 * kPi)
        az = 0.0;
    azimuth_ = az;
    elevation_ = elevation_rad;
}

double AngleSpec::spatial_frequency() const { return std::sin(elevation_) * std::cos(azimuth_); }

CVector steering_vector_from_frequency(const ArrayGeometry &geom, double spatial_frequency) {
    const int n = geom.num_elements();
    const double step = geom.phase_step() * spatial_frequency;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CVector v(n);
    for (int m = 0; m < n; ++m)
        v(m) = std::polar(scale, m * step);
    return v;
}

CVector steering_vector(const ArrayGeometry &geom, const AngleSpec &angle) {
    return steering_vector_from_frequency(geom, angle.spatial_frequency());
}

std::complex<double> inner_product(const CVector &a, const CVector &b) {
    if (a.size() != b.size())
        throw DimensionError("inner_product: length mismatch");
    std::complex<double> acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < a.size(); ++i)
        acc += std::conj(a(i)) * b(i);
    return acc;
}

std::complex<double> dirichlet_inner_product(const ArrayGeometry &geom, double freq_a, double freq_b) {
    const double n = geom.num_elements();
    // Per-element phase difference, reduced to [-pi, pi]; a^H b is 2*pi periodic in it.
    const double delta = std::remainder(geom.phase_step() * (freq_b - freq_a), 2.0 * kPi);
    const std::complex<double> phase = std::polar(1.0, (n - 1.0) * delta / 2.0);
    const double denom = n * std::sin(delta / 2.0);
    if (std::abs(denom) < 1e-12)
        return phase;
    return phase * (std::sin(n * delta / 2.0) / denom);
}

bool electrically_orthogonal(const ArrayGeometry &geom, const AngleSpec &angle1, const AngleSpec &angle2,
                             double tol) {
    if (!(tol > 0.0))
        throw ArgumentError("orthogonality tolerance must be positive");
    const CVector a = steering_vector(geom, angle1);
    const CVector b = steering_vector(geom, angle2);
    return std::abs(inner_product(a, b)) < tol;
}

} // namespace dirbf
