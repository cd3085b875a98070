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

#include "dirbf/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dirbf/errors.hpp"
#include "dirbf/steering.hpp"

namespace dirbf::closedform {

namespace {

double wrap_pi(double x) {
    double r = std::remainder(x, 2.0 * kPi); // [-pi, pi]
    if (r <= -kPi)
        r += 2.0 * kPi;
    return r;
}

double wrap_2pi(double x) {
    double r = std::fmod(x, 2.0 * kPi);
    if (r < 0.0)
        r += 2.0 * kPi;
    if (r >= 2.0 * kPi)
        r = 0.0;
    return r;
}

bool orthogonal(double mag) { return mag < kRegimeTol; }
bool parallel(double mag) { return mag > 1.0 - kRegimeTol; }

void require_gain(const TwoPathParams &p) {
    if (p.a() + p.b() == 0.0)
        throw ArgumentError("both path gains are zero");
}

// Relabel so that |alpha_1| >= |alpha_2|.
TwoPathParams ordered(const TwoPathParams &p, bool &swapped) {
    swapped = p.mag_a1 < p.mag_a2;
    return swapped ? p.swapped() : p;
}

} // namespace

double TwoPathParams::nu() const { return wrap_pi(vv_phase - uu_phase + phase_diff); }

TwoPathParams TwoPathParams::swapped() const {
    // u_2^H u_1 = conj(u_1^H u_2), likewise for v.
    return {mag_a2, mag_a1, -phase_diff, uu_mag, -uu_phase, vv_mag, -vv_phase};
}

void TwoPathParams::validate() const {
    if (!(mag_a1 >= 0.0) || !(mag_a2 >= 0.0) || !std::isfinite(mag_a1) || !std::isfinite(mag_a2))
        throw ArgumentError("path gain magnitudes must be finite and nonnegative");
    if (!(uu_mag >= 0.0 && uu_mag <= 1.0) || !(vv_mag >= 0.0 && vv_mag <= 1.0))
        throw ArgumentError("steering inner-product magnitudes must lie in [0, 1]");
    if (!std::isfinite(phase_diff) || !std::isfinite(uu_phase) || !std::isfinite(vv_phase))
        throw ArgumentError("phases must be finite");
}

AllocationPoint make_allocation(double beta_sq, double theta) {
    // Clamp rounding residue from the closed forms; reject real out-of-range input.
    if (!(beta_sq >= -1e-12 && beta_sq <= 1.0 + 1e-12))
        throw ArgumentError("beta^2 must lie in [0, 1]");
    return {std::sqrt(std::clamp(beta_sq, 0.0, 1.0)), wrap_2pi(theta)};
}

double DeltaSnr::db() const { return unbounded ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(ratio); }

double two_path_objective(const TwoPathParams &p, const AllocationPoint &alloc) {
    p.validate();
    if (!(alloc.beta >= 0.0 && alloc.beta <= 1.0))
        throw ArgumentError("allocation beta must lie in [0, 1]");
    const double a = p.a();
    const double b = p.b();
    const double beta = alloc.beta;
    const double beta_sq = beta * beta;
    const double s = std::sqrt(1.0 - beta_sq);
    const double vv = p.vv_mag;
    const double uu = p.uu_mag;
    const double phi = alloc.phi(p);
    const double nu = p.nu();
    const double cross = std::sqrt(a * b);
    const double bs = beta * s;

    const double norm_sq = 1.0 + 2.0 * bs * vv * std::cos(phi);
    if (!(norm_sq > 1e-14))
        throw DegenerateChannelError("two_path_objective: beamformer has zero norm");

    const double quad = beta_sq * a + (1.0 - beta_sq) * b + (beta_sq * b + (1.0 - beta_sq) * a) * vv * vv +
                        2.0 * cross * vv * uu * std::cos(nu) + 2.0 * bs * (a + b) * vv * std::cos(phi) +
                        2.0 * bs * cross * uu * (vv * vv * std::cos(nu + phi) + std::cos(nu - phi));
    return quad / (kTwoPaths * norm_sq);
}

AllocationPoint beta_opt_v_orth(const TwoPathParams &p) {
    p.validate();
    if (!orthogonal(p.vv_mag))
        throw RegimeError("beta_opt_v_orth requires electrically orthogonal v_1, v_2");
    require_gain(p);
    const double a = p.a();
    const double b = p.b();
    const double root = std::sqrt((a - b) * (a - b) + 4.0 * a * b * p.uu_mag * p.uu_mag);
    // Equal gains with orthogonal u: the objective is flat in beta.
    const double beta_sq = root == 0.0 ? 0.5 : 0.5 * (1.0 + (a - b) / root);
    return make_allocation(beta_sq, p.phase_diff - p.uu_phase);
}

DeltaSnr delta_snr_v_orth(const TwoPathParams &p) {
    p.validate();
    if (!orthogonal(p.vv_mag))
        throw RegimeError("delta_snr_v_orth requires electrically orthogonal v_1, v_2");
    require_gain(p);
    DeltaSnr d;
    const TwoPathParams q = ordered(p, d.swapped);
    const double a = q.a();
    const double b = q.b();
    const double uu_sq = q.uu_mag * q.uu_mag;
    d.ratio = (a + b + std::sqrt(a * a + b * b + 2.0 * a * b * (2.0 * uu_sq - 1.0))) / (2.0 * a);
    return d;
}

AllocationPoint beta_opt_u_orth(const TwoPathParams &p) {
    p.validate();
    if (!orthogonal(p.uu_mag))
        throw RegimeError("beta_opt_u_orth requires electrically orthogonal u_1, u_2");
    if (orthogonal(p.vv_mag))
        throw RegimeError("u_1, v_1 both orthogonal to their partners: use beta_opt_v_orth");
    require_gain(p);
    const double a = p.a();
    const double b = p.b();
    const double vv_sq = p.vv_mag * p.vv_mag;
    const double diff_sq = (a - b) * (a - b);
    const double big_a = diff_sq / vv_sq + 2.0 * a * (a + b);
    const double big_b = diff_sq * diff_sq / (vv_sq * vv_sq) + 4.0 * a * b * diff_sq / vv_sq;
    const double big_c = (1.0 + 1.0 / vv_sq) * (a + b) * (a + b) - 4.0 * a * b / vv_sq;
    const double root = std::sqrt(big_b);
    const double beta_sq = (a >= b) ? (big_a + root) / (2.0 * big_c) : (big_a - root) / (2.0 * big_c);
    return make_allocation(beta_sq, -p.vv_phase);
}

DeltaSnr delta_snr_u_orth(const TwoPathParams &p) {
    p.validate();
    if (!orthogonal(p.uu_mag))
        throw RegimeError("delta_snr_u_orth requires electrically orthogonal u_1, u_2");
    require_gain(p);
    DeltaSnr d;
    const TwoPathParams q = ordered(p, d.swapped);
    if (orthogonal(q.vv_mag))
        return d; // everything orthogonal: the dominant path is optimal
    const double a = q.a();
    const double b = q.b();
    const double vv = q.vv_mag;
    const double beta_sq = beta_opt_u_orth(q).beta_sq();
    const double beta = std::sqrt(beta_sq);
    const double s = std::sqrt(1.0 - beta_sq);
    const double optimal =
        a + b - (1.0 - vv * vv) * (beta_sq * b + (1.0 - beta_sq) * a) / (1.0 + 2.0 * beta * s * vv);
    const double dominant = std::max(a + b * vv * vv, b + a * vv * vv);
    d.ratio = optimal / dominant;
    return d;
}

double delta_snr_u_orth_equal_gain(double vv_mag) {
    if (!(vv_mag >= 0.0 && vv_mag <= 1.0))
        throw ArgumentError("|v_1^H v_2| must lie in [0, 1]");
    return (1.0 + vv_mag) / (1.0 + vv_mag * vv_mag);
}

DeltaSnr delta_snr_v_parallel(const TwoPathParams &p) {
    p.validate();
    if (!parallel(p.vv_mag))
        throw RegimeError("delta_snr_v_parallel requires parallel v_1, v_2");
    DeltaSnr d;
    d.swapped = p.mag_a1 < p.mag_a2;
    return d;
}

double snr_v_parallel(const TwoPathParams &p) {
    p.validate();
    if (!parallel(p.vv_mag))
        throw RegimeError("snr_v_parallel requires parallel v_1, v_2");
    const double a = p.a();
    const double b = p.b();
    return (a + b + 2.0 * std::sqrt(a * b) * p.uu_mag * std::cos(p.nu())) / kTwoPaths;
}

AllocationPoint beta_opt_u_parallel(const TwoPathParams &p) {
    p.validate();
    if (!parallel(p.uu_mag))
        throw RegimeError("beta_opt_u_parallel requires parallel u_1, u_2");
    require_gain(p);
    return make_allocation(p.a() / (p.a() + p.b()), p.phase_diff - p.uu_phase);
}

double snr_u_parallel_optimal(const TwoPathParams &p) {
    p.validate();
    if (!parallel(p.uu_mag))
        throw RegimeError("snr_u_parallel_optimal requires parallel u_1, u_2");
    const double a = p.a();
    const double b = p.b();
    return (a + b + 2.0 * std::sqrt(a * b) * std::cos(p.nu()) * p.vv_mag) / kTwoPaths;
}

DeltaSnr delta_snr_u_parallel(const TwoPathParams &p) {
    p.validate();
    if (!parallel(p.uu_mag))
        throw RegimeError("delta_snr_u_parallel requires parallel u_1, u_2");
    require_gain(p);
    DeltaSnr d;
    const TwoPathParams q = ordered(p, d.swapped);
    const double a = q.a();
    const double b = q.b();
    const double vv = q.vv_mag;
    const double denom = a + vv * vv * b + 2.0 * std::sqrt(a * b) * vv * std::cos(q.nu());
    if (denom <= 1e-15 * (a + b)) {
        d.unbounded = true;
        d.ratio = std::numeric_limits<double>::infinity();
        return d;
    }
    d.ratio = 1.0 + b * (1.0 - vv * vv) / denom;
    return d;
}

double snr_dominant_path(const TwoPathParams &p) {
    p.validate();
    const double a = p.a();
    const double b = p.b();
    const double vv_sq = p.vv_mag * p.vv_mag;
    return (std::max(a + b * vv_sq, b + a * vv_sq) + 2.0 * std::sqrt(a * b) * p.vv_mag * p.uu_mag * std::cos(p.nu())) /
           kTwoPaths;
}

double snr_equal_power_coherent(const TwoPathParams &p) {
    p.validate();
    const double a = p.a();
    const double b = p.b();
    return (1.0 + p.vv_mag) / (2.0 * kTwoPaths) * (a + b + 2.0 * std::sqrt(a * b) * p.uu_mag);
}

double snr_optimal(const TwoPathParams &p) {
    p.validate();
    const double a = p.a();
    const double b = p.b();
    // Trace and determinant of A (V^H V) for L = 2.
    const double trace = a + b + 2.0 * std::sqrt(a * b) * p.uu_mag * p.vv_mag * std::cos(p.nu());
    const double det = a * b * (1.0 - p.uu_mag * p.uu_mag) * (1.0 - p.vv_mag * p.vv_mag);
    const double disc = std::max(0.0, trace * trace - 4.0 * det);
    return (trace + std::sqrt(disc)) / (2.0 * kTwoPaths);
}

} // namespace dirbf::closedform
