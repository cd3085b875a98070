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

// Two-path (L = 2) closed forms for the optimal beamformer, the directional
// schemes, and the SNR loss of directional beamforming. All SNRs are
// normalized received SNRs, SNR_rx / (N_t N_r rho), and all losses are linear
// ratios >= 1 unless a function name says dB.

namespace dirbf::closedform {

inline constexpr int kTwoPaths = 2;

// Tolerance for the electrical orthogonality / parallelism regimes.
inline constexpr double kRegimeTol = 1e-9;

struct TwoPathParams {
    double mag_a1 = 1.0;     // |alpha_1|
    double mag_a2 = 1.0;     // |alpha_2|
    double phase_diff = 0.0; // angle(alpha_1) - angle(alpha_2)
    double uu_mag = 0.0;     // |u_1^H u_2|
    double uu_phase = 0.0;   // angle(u_1^H u_2)
    double vv_mag = 0.0;     // |v_1^H v_2|
    double vv_phase = 0.0;   // angle(v_1^H v_2)

    double a() const { return mag_a1 * mag_a1; }
    double b() const { return mag_a2 * mag_a2; }

    // Phase misalignment nu = angle(v_1^H v_2) - angle(u_1^H u_2) + angle(alpha_1) - angle(alpha_2),
    // wrapped to (-pi, pi]. nu = 0 is coherent alignment.
    double nu() const;

    // Same channel with the path labels exchanged.
    TwoPathParams swapped() const;

    // Throws ArgumentError on negative magnitudes or inner products outside [0, 1].
    void validate() const;
};

// f = beta v_1 + e^{j theta} sqrt(1 - beta^2) v_2.
struct AllocationPoint {
    double beta = 1.0;  // [0, 1]
    double theta = 0.0; // [0, 2pi)

    double beta_sq() const { return beta * beta; }
    // phi = theta + angle(v_1^H v_2)
    double phi(const TwoPathParams &p) const { return theta + p.vv_phase; }
};

AllocationPoint make_allocation(double beta_sq, double theta);

struct DeltaSnr {
    double ratio = 1.0;
    bool swapped = false;   // paths were relabeled so that |alpha_1| >= |alpha_2|
    bool unbounded = false; // complete destructive alignment; ratio is +inf

    double db() const;
};

// Normalized SNR of an arbitrary allocation, from the expansions of f^H f and
// f^H H^H H f.
double two_path_objective(const TwoPathParams &p, const AllocationPoint &alloc);

// v_1 and v_2 electrically orthogonal.
AllocationPoint beta_opt_v_orth(const TwoPathParams &p);
DeltaSnr delta_snr_v_orth(const TwoPathParams &p);

// u_1 and u_2 electrically orthogonal (and v_1^H v_2 != 0).
AllocationPoint beta_opt_u_orth(const TwoPathParams &p);
DeltaSnr delta_snr_u_orth(const TwoPathParams &p);
// Equal gains: (1 + |v_1^H v_2|) / (1 + |v_1^H v_2|^2).
double delta_snr_u_orth_equal_gain(double vv_mag);

// v_1 and v_2 parallel: every allocation gives the same SNR.
DeltaSnr delta_snr_v_parallel(const TwoPathParams &p);
double snr_v_parallel(const TwoPathParams &p);

// u_1 and u_2 parallel: maximum-ratio power split.
AllocationPoint beta_opt_u_parallel(const TwoPathParams &p);
double snr_u_parallel_optimal(const TwoPathParams &p);
DeltaSnr delta_snr_u_parallel(const TwoPathParams &p);

// All power on the stronger path.
double snr_dominant_path(const TwoPathParams &p);
// beta = 1/sqrt(2) under coherent alignment (phi = nu = 0).
double snr_equal_power_coherent(const TwoPathParams &p);
// Optimal normalized SNR for two paths (largest eigenvalue of the 2x2 reduced problem).
double snr_optimal(const TwoPathParams &p);

} // namespace dirbf::closedform
