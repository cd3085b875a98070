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

// Brute-force references the closed forms are checked against. Nothing here
// calls into closedform.

#include <cstdint>
#include <vector>

#include "dirbf/channel.hpp"
#include "dirbf/closedform.hpp"

namespace dirbf::oracle {

// Normalized SNR of f = beta v_1 + e^{j theta} sqrt(1-beta^2) v_2 evaluated with
// 2x2 Gram matrices: with c = (beta, e^{j theta} sqrt(1-beta^2)), w = G c,
// value = (w^H Q w) / (L c^H G c), Q(i,j) = conj(alpha_i) alpha_j u_i^H u_j.
double two_path_gram_objective(const closedform::TwoPathParams &p, const closedform::AllocationPoint &alloc);

struct TwoPathGridResult {
    double beta = 0.0; // argmax beta
    double phi = 0.0;  // argmax phi = theta + angle(v_1^H v_2)
    double value = 0.0;
    std::uint64_t index = 0;
    double beta_step = 0.0;
};

// Argmax of two_path_gram_objective over beta in linspace(0, 1, beta_points) x
// phi in {2 pi k / phi_points}. OpenMP; ties go to the lowest linear index.
TwoPathGridResult two_path_grid_max(const closedform::TwoPathParams &p, int beta_points = 201, int phi_points = 360);

namespace serial {
TwoPathGridResult two_path_grid_max(const closedform::TwoPathParams &p, int beta_points = 201, int phi_points = 360);
}

// ||x - P x|| / ||x|| with P the orthogonal projector onto the column span of basis.
double span_residual(const CVector &x, const CMatrix &basis);

// A concrete ULA channel (d = lambda/2) whose two paths have the requested
// |u_1^H u_2|, |v_1^H v_2| and phase misalignment nu. The realized inner-product
// phases are whatever the geometry gives; params reports them exactly.
struct TwoPathRealization {
    std::vector<PathComponent> paths;
    LinkGeometry link;
    closedform::TwoPathParams params;
};

TwoPathRealization realize_two_path(double mag_a1, double mag_a2, double nu, double uu_mag, double vv_mag, int nt,
                                    int nr);

// Separation in spatial frequency in [0, 2/N] whose Dirichlet magnitude is target
// (bisection on the main lobe).
double frequency_separation_for(int num_elements, double target_mag);

} // namespace dirbf::oracle
