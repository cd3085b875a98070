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

#include "dirbf/oracle.hpp"

#include <cmath>
#include <limits>

namespace dirbf::oracle {

using closedform::AllocationPoint;
using closedform::TwoPathParams;

double two_path_gram_objective(const TwoPathParams &p, const AllocationPoint &alloc) {
    using C = std::complex<double>;
    const double s = std::sqrt(std::max(0.0, 1.0 - alloc.beta * alloc.beta));
    const Eigen::Vector2cd c(alloc.beta, std::polar(s, alloc.theta));

    Eigen::Matrix2cd gram; // G(i,j) = v_i^H v_j
    gram << 1.0, std::polar(p.vv_mag, p.vv_phase), std::polar(p.vv_mag, -p.vv_phase), 1.0;
    Eigen::Matrix2cd rx_gram; // A(i,j) = u_i^H u_j
    rx_gram << 1.0, std::polar(p.uu_mag, p.uu_phase), std::polar(p.uu_mag, -p.uu_phase), 1.0;
    const Eigen::Vector2cd alpha(std::polar(p.mag_a1, p.phase_diff), C(p.mag_a2, 0.0));

    const Eigen::Vector2cd w = gram * c; // w_i = v_i^H f
    const Eigen::Vector2cd aw = alpha.cwiseProduct(w);
    const double numerator = aw.dot(rx_gram * aw).real();
    const double denominator = c.dot(gram * c).real();
    if (!(denominator > 1e-14))
        return -std::numeric_limits<double>::infinity();
    return numerator / (closedform::kTwoPaths * denominator);
}

namespace {

struct Grid {
    const TwoPathParams &p;
    int nb;
    int nphi;

    double beta(std::int64_t i) const { return static_cast<double>(i % nb) / (nb - 1); }
    double phi(std::int64_t i) const { return 2.0 * kPi * static_cast<double>(i / nb) / nphi; }

    double value(std::int64_t i) const {
        const double ph = phi(i);
        return two_path_gram_objective(p, {beta(i), ph - p.vv_phase});
    }

    TwoPathGridResult result(std::int64_t i, double v) const {
        return {beta(i), phi(i), v, static_cast<std::uint64_t>(i), 1.0 / (nb - 1)};
    }
};

void check_grid(int nb, int nphi) {
    if (nb < 2 || nphi < 2)
        throw ArgumentError("two_path_grid_max: resolutions must be at least 2");
}

} // namespace

TwoPathGridResult two_path_grid_max(const TwoPathParams &p, int beta_points, int phi_points) {
    check_grid(beta_points, phi_points);
    const Grid g{p, beta_points, phi_points};
    const std::int64_t n = static_cast<std::int64_t>(beta_points) * phi_points;
    double best = -std::numeric_limits<double>::infinity();
    std::int64_t best_i = n;

#pragma omp parallel
    {
        double local = -std::numeric_limits<double>::infinity();
        std::int64_t local_i = n;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const double v = g.value(i);
            if (v > local || (v == local && i < local_i)) {
                local = v;
                local_i = i;
            }
        }
#pragma omp critical(dirbf_two_path_reduce)
        if (local > best || (local == best && local_i < best_i)) {
            best = local;
            best_i = local_i;
        }
    }
    return g.result(best_i, best);
}

namespace serial {

TwoPathGridResult two_path_grid_max(const TwoPathParams &p, int beta_points, int phi_points) {
    check_grid(beta_points, phi_points);
    const Grid g{p, beta_points, phi_points};
    const std::int64_t n = static_cast<std::int64_t>(beta_points) * phi_points;
    double best = -std::numeric_limits<double>::infinity();
    std::int64_t best_i = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = g.value(i);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    return g.result(best_i, best);
}

} // namespace serial

double span_residual(const CVector &x, const CMatrix &basis) {
    if (x.size() != basis.rows())
        throw DimensionError("span_residual: vector length does not match basis");
    const double nx = x.norm();
    if (nx == 0.0)
        return 0.0;
    Eigen::HouseholderQR<CMatrix> qr(basis);
    const Eigen::Index k = std::min(basis.rows(), basis.cols());
    const CMatrix q = qr.householderQ() * CMatrix::Identity(basis.rows(), k);
    const CVector r = x - q * (q.adjoint() * x);
    return r.norm() / nx;
}

double frequency_separation_for(int num_elements, double target_mag) {
    if (!(target_mag >= 0.0 && target_mag <= 1.0))
        throw ArgumentError("target magnitude must lie in [0, 1]");
    if (target_mag == 1.0)
        return 0.0;
    if (num_elements < 2)
        throw ArgumentError("a single element cannot separate two directions");
    const ArrayGeometry geom(num_elements, 0.5);
    const double upper = 2.0 / num_elements;
    if (target_mag == 0.0)
        return upper;
    // |D| falls monotonically from 1 to 0 across the main lobe [0, 2/N].
    double lo = 0.0;
    double hi = upper;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(dirichlet_inner_product(geom, 0.0, mid)) > target_mag)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

TwoPathRealization realize_two_path(double mag_a1, double mag_a2, double nu, double uu_mag, double vv_mag, int nt,
                                    int nr) {
    const LinkGeometry link{ArrayGeometry(nt, 0.5), ArrayGeometry(nr, 0.5)};
    // Spatial frequencies -0.5 and -0.5 + delta; the azimuth is acos(frequency).
    const double base = -0.5;
    const AngleSpec first(std::acos(base));
    const AngleSpec aod2(std::acos(base + frequency_separation_for(nt, vv_mag)));
    const AngleSpec aoa2(std::acos(base + frequency_separation_for(nr, uu_mag)));

    const std::complex<double> vv = inner_product(steering_vector(link.tx, first), steering_vector(link.tx, aod2));
    const std::complex<double> uu = inner_product(steering_vector(link.rx, first), steering_vector(link.rx, aoa2));

    closedform::TwoPathParams params;
    params.mag_a1 = mag_a1;
    params.mag_a2 = mag_a2;
    params.uu_mag = std::min(1.0, std::abs(uu));
    params.uu_phase = std::arg(uu);
    params.vv_mag = std::min(1.0, std::abs(vv));
    params.vv_phase = std::arg(vv);
    params.phase_diff = nu - params.vv_phase + params.uu_phase;

    TwoPathRealization r{{}, link, params};
    r.paths.push_back({std::polar(mag_a1, params.phase_diff), first, first});
    r.paths.push_back({std::complex<double>(mag_a2, 0.0), aod2, aoa2});
    return r;
}

} // namespace dirbf::oracle
