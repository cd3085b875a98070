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

#include <cmath>
#include <limits>


namespace dirbf {

namespace {

// Grid over the set of f = sum_i e^{j theta_i} beta_i v_i. The search reduces
// to L x L quadratic forms: value(c) = c^H P c / c^H G c with P = (H V)^H (H V),
// G = V^H V and V = [v_1 .. v_L].
class SteeringGrid {
  public:
    SteeringGrid(std::span<const PathComponent> paths, const LinkGeometry &link, const GridSpec &spec)
        : h_(assemble_channel(paths, link)), paths_(paths.size()), nb_(spec.beta_points), nth_(spec.theta_points) {
        if (spec.beta_points < 2 || spec.theta_points < 2)
            throw ArgumentError("grid resolutions must be at least 2");
        const auto L = static_cast<Eigen::Index>(paths.size());
        basis_.resize(link.tx.num_elements(), L);
        for (Eigen::Index l = 0; l < L; ++l)
            basis_.col(l) = steering_vector(link.tx, paths[static_cast<std::size_t>(l)].aod);
        const CMatrix hv = h_.entries * basis_;
        quad_ = hv.adjoint() * hv / (static_cast<double>(h_.nt()) * h_.nr());
        gram_ = basis_.adjoint() * basis_;

        const double dims = static_cast<double>(paths_ - 1);
        const double count = std::pow(static_cast<double>(nb_), dims) * std::pow(static_cast<double>(nth_), dims);
        if (count > static_cast<double>(spec.max_points))
            throw ResourceError("grid of " + std::to_string(count) + " points exceeds cap of " +
                                std::to_string(spec.max_points));
        points_ = static_cast<std::uint64_t>(std::llround(count));
    }

    std::uint64_t points() const { return points_; }

    // Coefficients c for a linear index; false if the beta point lies outside the unit ball.
    bool coefficients(std::uint64_t index, std::vector<double> &beta, std::vector<double> &theta) const {
        beta.assign(paths_, 0.0);
        theta.assign(paths_, 0.0);
        double sum = 0.0;
        for (std::size_t j = 0; j + 1 < paths_; ++j) {
            beta[j] = static_cast<double>(index % nb_) / (nb_ - 1);
            index /= nb_;
            sum += beta[j] * beta[j];
        }
        for (std::size_t j = 1; j < paths_; ++j) {
            theta[j] = 2.0 * kPi * static_cast<double>(index % nth_) / nth_;
            index /= nth_;
        }
        if (sum > 1.0 + 1e-12)
            return false;
        beta[paths_ - 1] = std::sqrt(std::max(0.0, 1.0 - sum));
        return true;
    }

    double value(std::uint64_t index, std::vector<double> &beta, std::vector<double> &theta, CVector &c) const {
        if (!coefficients(index, beta, theta))
            return -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < paths_; ++j)
            c(static_cast<Eigen::Index>(j)) = std::polar(beta[j], theta[j]);
        const double den = c.dot(gram_ * c).real();
        if (!(den > 1e-12))
            return -std::numeric_limits<double>::infinity();
        return c.dot(quad_ * c).real() / den;
    }

    std::size_t num_paths() const { return paths_; }

    GridSearchResult result(std::uint64_t index) const {
        GridSearchResult r;
        r.index = index;
        r.points = points_;
        coefficients(index, r.beta, r.theta);
        CVector c(static_cast<Eigen::Index>(paths_));
        for (std::size_t j = 0; j < paths_; ++j)
            c(static_cast<Eigen::Index>(j)) = std::polar(r.beta[j], r.theta[j]);
        CVector f = basis_ * c;
        f.normalize();
        canonicalize_phase(f);
        r.pair.rx = matched_filter(h_, f);
        r.pair.normalized_snr = (h_.entries * f).squaredNorm() / (static_cast<double>(h_.nt()) * h_.nr());
        r.pair.tx = std::move(f);
        return r;
    }

  private:
    ChannelMatrix h_;
    std::size_t paths_;
    std::uint64_t nb_;
    std::uint64_t nth_;
    std::uint64_t points_ = 0;
    CMatrix basis_;
    CMatrix quad_;
    CMatrix gram_;
};

struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::uint64_t index = std::numeric_limits<std::uint64_t>::max();

    void offer(double v, std::uint64_t i) {
        if (v > value || (v == value && i < index)) {
            value = v;
            index = i;
        }
    }
};

void require_paths(std::span<const PathComponent> paths) {
    if (paths.empty())
        throw ArgumentError("grid search needs at least one path");
}

} // namespace

GridSearchResult grid_search_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link,
                                        const GridSpec &grid) {
    require_paths(paths);
    const SteeringGrid sg(paths, link, grid);
    const auto n = static_cast<std::int64_t>(sg.points());
    Best best;

#pragma omp parallel
    {
        Best local;
        std::vector<double> beta, theta;
        CVector c(static_cast<Eigen::Index>(sg.num_paths()));
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const auto idx = static_cast<std::uint64_t>(i);
            local.offer(sg.value(idx, beta, theta, c), idx);
        }
#pragma omp critical(dirbf_grid_reduce)
        best.offer(local.value, local.index);
    }
    return sg.result(best.index);
}

namespace serial {

GridSearchResult grid_search_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link,
                                        const GridSpec &grid) {
    require_paths(paths);
    const SteeringGrid sg(paths, link, grid);
    Best best;
    std::vector<double> beta, theta;
    CVector c(static_cast<Eigen::Index>(sg.num_paths()));
    for (std::uint64_t i = 0; i < sg.points(); ++i)
        best.offer(sg.value(i, beta, theta, c), i);
    return sg.result(best.index);
}

} // namespace serial

} // namespace dirbf
