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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dirbf/channel.hpp"

namespace dirbf {

// Unit-norm transmit/receive pair and the normalized SNR it achieves on the
// channel it was computed for: |rx^H H tx|^2 / (N_t N_r).
struct BeamformerPair {
    CVector tx;
    CVector rx;
    double normalized_snr = 0.0;
    // Set when reduced_optimal_beamformer had to hand over to power iteration.
    bool fallback_used = false;
};

struct SnrReport {
    double pre_beamforming_snr = 1.0; // rho, linear
    double received_snr = 0.0;        // rho |g^H H f|^2 / (g^H g)
    double normalized_snr = 0.0;      // received_snr / (N_t N_r rho)
    std::optional<double> delta_snr_db; // 10 log10(reference / normalized), when a reference is given
};

SnrReport received_snr(const ChannelMatrix &h, const CVector &f, const CVector &g, double rho = 1.0,
                       std::optional<double> reference_normalized_snr = std::nullopt);

// g = H f / ||H f||.
CVector matched_filter(const ChannelMatrix &h, const CVector &f);

// Rotate v so that its first entry is real and nonnegative.
void canonicalize_phase(CVector &v);

struct PowerIterationOptions {
    double rel_tol = 1e-13;  // on successive Rayleigh quotients
    int max_iters = 10'000;
};

struct DominantEigenpair {
    CVector vector;    // unit norm, canonical phase
    double eigenvalue; // of H^H H
    int iterations;    // summed over both starts
};

// Power iteration on H^H H. Runs from the normalized all-ones vector and from a
// fixed pseudo-random vector and keeps the larger Rayleigh quotient, so a start
// orthogonal to the dominant eigenspace cannot go unnoticed.
DominantEigenpair dominant_eigenpair(const ChannelMatrix &h, const PowerIterationOptions &opts = {});

BeamformerPair optimal_beamformer(const ChannelMatrix &h, const PowerIterationOptions &opts = {});

// Eigenvalues of the L x L matrix A (V^H V), V = [conj(a_1) v_1, ..., conj(a_L) v_L],
// A(i,j) = u_i^H u_j, scaled by N_t N_r / L so that they are the nonzero eigenvalues
// of H^H H. Sorted in descending order.
Eigen::VectorXd reduced_eigenvalues(std::span<const PathComponent> paths, const LinkGeometry &link);

// Optimal pair through the L x L eigenproblem: tx = V x for the dominant eigenvector x.
BeamformerPair reduced_optimal_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link,
                                          const PowerIterationOptions &fallback_opts = {});

// Index of the strongest |alpha|; lowest index wins ties.
std::size_t dominant_path_index(std::span<const PathComponent> paths);

// tx = v of the strongest path, rx = matched filter.
BeamformerPair dominant_path_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link);

// tx = v and rx = u of the strongest path. Both are CPO vectors.
BeamformerPair bidirectional_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link);

// L = 2 only. Phase theta in [0, 2pi) of tx ~ v_1 + e^{j theta} v_2 that maximizes the
// matched-filter SNR: 720-point grid, then three halving refinement passes.
double equal_power_phase(std::span<const PathComponent> paths, const LinkGeometry &link);
BeamformerPair equal_power_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link);

// Exhaustive search over f = beta_1 v_1 + sum_{i>=2} e^{j theta_i} beta_i v_i with
// beta_1..beta_{L-1} on a uniform [0,1] grid, beta_L = sqrt(1 - sum beta_j^2) and
// theta_i on a uniform [0, 2pi) grid. Points with sum beta_j^2 > 1 are skipped.
struct GridSpec {
    int beta_points = 21;
    int theta_points = 36;
    std::uint64_t max_points = 50'000'000;
};

struct GridSearchResult {
    BeamformerPair pair;
    std::vector<double> beta;  // beta_1..beta_L at the optimum
    std::vector<double> theta; // theta_1 = 0, theta_2..theta_L
    std::uint64_t index = 0;   // linear grid index of the optimum
    std::uint64_t points = 0;  // grid size
};

// OpenMP kernel. The argmax reduction breaks ties by lowest linear index, so the
// result matches serial::grid_search_beamformer exactly.
GridSearchResult grid_search_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link,
                                        const GridSpec &grid = {});

namespace serial {
// Single-threaded reference for the grid kernel.
GridSearchResult grid_search_beamformer(std::span<const PathComponent> paths, const LinkGeometry &link,
                                        const GridSpec &grid = {});
} // namespace serial

} // namespace dirbf
