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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dirbf/channel.hpp"

namespace dirbf {

enum class GainModel { complex_gaussian };
enum class Scheme { bidirectional, dominant_tx_mf_rx, equal_power };

std::string to_string(GainModel m);
std::string to_string(Scheme s);
GainModel parse_gain_model(std::string_view name);
Scheme parse_scheme(std::string_view name);

struct McConfig {
    int num_paths = 2;
    int nt = 64;
    int nr = 4;
    double spacing_wavelengths = 0.5;
    std::uint64_t trials = 10'000;
    std::uint64_t seed = 42;
    double fov_deg = 120.0; // azimuths uniform over [90 - fov/2, 90 + fov/2] degrees
    GainModel gain_model = GainModel::complex_gaussian;
    Scheme scheme = Scheme::bidirectional;

    void validate() const;
    LinkGeometry link() const;
};

nlohmann::json to_json(const McConfig &cfg);

// Sorted loss samples in dB with the empirical P(delta > x) at each sample.
struct CcdfTable {
    std::vector<double> samples_db;
    std::vector<double> ccdf;
    std::uint64_t resampled_trials = 0;    // degenerate draws replaced by a fresh draw
    std::uint64_t nonconverged_trials = 0; // power iteration hit its cap; best iterate used

    bool operator==(const CcdfTable &) const = default;
};

// Builds the table from unsorted samples.
CcdfTable make_ccdf(std::vector<double> samples_db);

// Paths for one trial; a pure function of (cfg.seed, trial_index, attempt).
std::vector<PathComponent> sample_paths(const McConfig &cfg, std::uint64_t trial_index, std::uint64_t attempt = 0);

struct TrialOutcome {
    double delta_snr_db = 0.0;
    std::uint32_t resamples = 0;
    bool nonconverged = false;
};

// Optimal vs. cfg.scheme normalized SNR for one trial.
TrialOutcome run_trial(const McConfig &cfg, std::uint64_t trial_index);

// OpenMP over trials; bit-identical to serial::run_ccdf for any thread count.
CcdfTable run_ccdf(const McConfig &cfg);

namespace serial {
CcdfTable run_ccdf(const McConfig &cfg);
}

// Nearest-rank p-quantile: the ceil(p n)-th smallest sample.
double percentile(const CcdfTable &table, double p);
inline double median(const CcdfTable &table) { return percentile(table, 0.5); }

// CSV with header "delta_snr_db,ccdf". The preamble, if any, is written first
// verbatim (each line should start with '#').
std::string ccdf_to_csv(const CcdfTable &table, std::string_view preamble = {});
nlohmann::json ccdf_to_json(const CcdfTable &table, const McConfig &cfg);

} // namespace dirbf
