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

#include "dirbf/beamformer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace dirbf {

namespace {

double array_gain(const ChannelMatrix &h) { return static_cast<double>(h.nt()) * h.nr(); }

struct IterationRun {
    CVector x;
    double rayleigh = 0.0;
    int iterations = 0;
    bool converged = false;
};

IterationRun power_iterate(const CMatrix &h, CVector x, const PowerIterationOptions &opts) {
    x.normalize();
    IterationRun run;
    double previous = -1.0;
    for (int k = 1; k <= opts.max_iters; ++k) {
        const CVector hx = h * x;
        const double rq = hx.squaredNorm();
        const CVector y = h.adjoint() * hx;
        const double ny = y.norm();
        run.iterations = k;
        if (ny == 0.0) {
            // x sits in the null space of H; nothing to amplify from here.
            run.x = x;
            run.rayleigh = 0.0;
            run.converged = true;
            return run;
        }
        x = y / ny;
        if (previous >= 0.0 && std::abs(rq - previous) <= opts.rel_tol * rq) {
            run.converged = true;
            break;
        }
        previous = rq;
    }
    run.x = std::move(x);
    run.rayleigh = (h * run.x).squaredNorm();
    return run;
}

CVector pseudo_random_start(Eigen::Index n) {
    std::mt19937_64 gen(0x9E3779B97F4A7C15ULL);
    CVector x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
        const double im = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
        x(i) = {re, im};
    }
    return x;
}

BeamformerPair finish_pair(const ChannelMatrix &h, CVector tx) {
    tx.normalize();
    canonicalize_phase(tx);
    BeamformerPair pair;
    pair.rx = matched_filter(h, tx);
    pair.normalized_snr = (h.entries * tx).squaredNorm() / array_gain(h);
    pair.tx = std::move(tx);
    return pair;
}

void require_paths(std::span<const PathComponent> paths) {
    if (paths.empty())
        throw ArgumentError("at least one path is required");
}

} // namespace

SnrReport received_snr(const ChannelMatrix &h, const CVector &f, const CVector &g, double rho,
                       std::optional<double> reference_normalized_snr) {
    if (f.size() != h.nt() || g.size() != h.nr())
        throw DimensionError("received_snr: beamformer length does not match channel");
    if (f.norm() > 1.0 + 1e-12)
        throw ArgumentError("received_snr: transmit beamformer exceeds unit energy");
    const double gg = g.squaredNorm();
    if (gg == 0.0)
        throw ArgumentError("received_snr: receive combiner is zero");
    if (!(rho >= 0.0))
        throw ArgumentError("received_snr: pre-beamforming SNR must be nonnegative");

    const double gain = std::norm(g.dot(h.entries * f)) / gg; // Eigen's dot conjugates the left operand
    SnrReport r;
    r.pre_beamforming_snr = rho;
    r.received_snr = rho * gain;
    r.normalized_snr = gain / array_gain(h);
    if (reference_normalized_snr)
        r.delta_snr_db = 10.0 * std::log10(*reference_normalized_snr / r.normalized_snr);
    return r;
}

CVector matched_filter(const ChannelMatrix &h, const CVector &f) {
    if (f.size() != h.nt())
        throw DimensionError("matched_filter: beamformer length does not match channel");
    CVector g = h.entries * f;
    const double n = g.norm();
    if (!(n > 0.0))
        throw DegenerateChannelError("matched_filter: H f is zero");
    return g / n;
}

void canonicalize_phase(CVector &v) {
    if (v.size() == 0)
        return;
    const double mag = std::abs(v(0));
    if (mag == 0.0)
        return;
    v *= std::conj(v(0)) / mag;
    v(0) = mag;
}

DominantEigenpair dominant_eigenpair(const ChannelMatrix &h, const PowerIterationOptions &opts) {
    if (h.entries.size() == 0 || h.entries.squaredNorm() == 0.0)
        throw DegenerateChannelError("dominant_eigenpair: channel is zero");

    const Eigen::Index nt = h.entries.cols();
    IterationRun a = power_iterate(h.entries, CVector::Ones(nt), opts);
    IterationRun b = power_iterate(h.entries, pseudo_random_start(nt), opts);
    const int total = a.iterations + b.iterations;
    IterationRun &best = (b.rayleigh > a.rayleigh) ? b : a;

    if (!best.converged)
        throw ConvergenceError("power iteration did not converge", best.x, best.rayleigh, total);

    canonicalize_phase(best.x);
    return {std::move(best.x), best.rayleigh, total};
}

BeamformerPair optimal_beamformer(const ChannelMatrix &h, const PowerIterationOptions &opts) {
    DominantEigenpair eig = dominant_eigenpair(h, opts);
    return finish_pair(h, std::move(eig.vector));
}

namespace {

struct ReducedProblem {
    CMatrix weighted_tx; // V, N_t x L
    CMatrix reduced;     // A (V^H V), L x L
};

ReducedProblem build_reduced(std::span<const PathComponent> paths, const LinkGeometry &link) {
    const auto L = static_cast<Eigen::Index>(paths.size());
    CMatrix v(link.tx.num_elements(), L);
    CMatrix u(link.rx.num_elements(), L);
    for (Eigen::Index l = 0; l < L; ++l) {
        const auto &p = paths[static_cast<std::size_t>(l)];
        v.col(l) = std::conj(p.gain) * steering_vector(link.tx, p.aod);
        u.col(l) = steering_vector(link.rx, p.aoa);
    }
    CMatrix a = u.adjoint() * u;
    CMatrix reduced = a * (v.adjoint() * v);
    return {std::move(v), std::move(reduced)};
}

} // namespace

Eigen::VectorXd reduced_eigenvalues(std::span<const PathComponent> paths, const LinkGeometry &link) {
    require_paths(paths);
    const ReducedProblem rp = build_reduced(paths, link);
    Eigen::ComplexEigenSolver<CMatrix> es(rp.reduced, false);
    if (es.info() != Eigen::Success)
        throw Error("reduced eigenproblem failed");
    const double scale = static_cast<double>(link.tx.num_elements()) * link.rx.num_elements() /
                         static_cast<double>(paths.size());
    Eigen::VectorXd ev = scale * es.eigenvalues().real();
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
    return ev;
}

BeamformerPair reduced_optimal_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link,
                                          const PowerIterationOptions &fallback_opts) {
    require_paths(paths);
    const ChannelMatrix h = assemble_channel(paths, link);
    const ReducedProblem rp = build_reduced(paths, link);

    auto fallback = [&] {
        BeamformerPair pair = optimal_beamformer(h, fallback_opts);
        pair.fallback_used = true;
        return pair;
    };

    Eigen::ComplexEigenSolver<CMatrix> es(rp.reduced, true);
    if (es.info() != Eigen::Success)
        return fallback();

    const auto &lambda = es.eigenvalues();
    Eigen::Index k = 0;
    for (Eigen::Index i = 1; i < lambda.size(); ++i)
        if (lambda(i).real() > lambda(k).real())
            k = i;
    const double top = lambda(k).real();
    // A (V^H V) is similar to a PSD matrix, so a usable dominant eigenvalue is real and positive.
    if (!(top > 0.0) || std::abs(lambda(k).imag()) > 1e-8 * top)
        return fallback();

    const CVector x = es.eigenvectors().col(k);
    CVector tx = rp.weighted_tx * x;
    const double tx_norm = tx.norm();
    if (!(tx_norm > 1e-12 * rp.weighted_tx.norm() * x.norm()))
        return fallback();
    tx /= tx_norm;

    // Eigenvector of the reduced problem must map to an eigenvector of H^H H.
    const double scale = static_cast<double>(paths.size()) / array_gain(h);
    const CVector hx = h.entries * tx;
    const CVector residual = scale * (h.entries.adjoint() * hx) - top * tx;
    if (residual.norm() > 1e-6 * top)
        return fallback();

    return finish_pair(h, std::move(tx));
}

std::size_t dominant_path_index(std::span<const PathComponent> paths) {
    if (paths.empty())
        throw ArgumentError("dominant_path_index: no paths");
    std::size_t best = 0;
    for (std::size_t i = 1; i < paths.size(); ++i)
        if (std::abs(paths[i].gain) > std::abs(paths[best].gain))
            best = i;
    return best;
}

BeamformerPair dominant_path_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link) {
    const ChannelMatrix h = assemble_channel(paths, link);
    const auto &p = paths[dominant_path_index(paths)];
    return finish_pair(h, steering_vector(link.tx, p.aod));
}

BeamformerPair bidirectional_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link) {
    const ChannelMatrix h = assemble_channel(paths, link);
    const auto &p = paths[dominant_path_index(paths)];
    BeamformerPair pair;
    pair.tx = steering_vector(link.tx, p.aod);
    pair.rx = steering_vector(link.rx, p.aoa);
    pair.normalized_snr = std::norm(pair.rx.dot(h.entries * pair.tx)) / array_gain(h);
    return pair;
}

double equal_power_phase(std::span<const PathComponent> paths, const LinkGeometry &link) {
    if (paths.size() != 2)
        throw UnsupportedError("equal-power beamforming is defined for L = 2 only");
    const ChannelMatrix h = assemble_channel(paths, link);
    const CVector v1 = steering_vector(link.tx, paths[0].aod);
    const CVector v2 = steering_vector(link.tx, paths[1].aod);
    const CVector h1 = h.entries * v1;
    const CVector h2 = h.entries * v2;
    const std::complex<double> c = v1.dot(v2);

    auto snr = [&](double theta) {
        const std::complex<double> e = std::polar(1.0, theta);
        const double norm_sq = 2.0 + 2.0 * (e * c).real();
        if (norm_sq <= 1e-12)
            return -std::numeric_limits<double>::infinity();
        return (h1 + e * h2).squaredNorm() / norm_sq;
    };

    constexpr int kGrid = 720;
    double step = 2.0 * kPi / kGrid;
    double best_theta = 0.0;
    double best = snr(0.0);
    for (int k = 1; k < kGrid; ++k) {
        const double theta = k * step;
        const double val = snr(theta);
        if (val > best) {
            best = val;
            best_theta = theta;
        }
    }
    for (int pass = 0; pass < 3; ++pass) {
        step /= 2.0;
        const double lo = snr(best_theta - step);
        const double hi = snr(best_theta + step);
        if (lo > best && lo >= hi) {
            best = lo;
            best_theta -= step;
        } else if (hi > best) {
            best = hi;
            best_theta += step;
        }
    }
    best_theta = std::fmod(best_theta, 2.0 * kPi);
    if (best_theta < 0.0)
        best_theta += 2.0 * kPi;
    return best_theta;
}

BeamformerPair equal_power_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link) {
    const double theta = equal_power_phase(paths, link);
    const ChannelMatrix h = assemble_channel(paths, link);
    CVector f = steering_vector(link.tx, paths[0].aod) + std::polar(1.0, theta) * steering_vector(link.tx, paths[1].aod);
    return finish_pair(h, std::move(f));
}

} // namespace dirbf
