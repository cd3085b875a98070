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
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirbf/steering.hpp"

namespace dirbf {

// One scatterer: complex gain plus departure and arrival directions.
struct PathComponent {
    std::complex<double> gain{1.0, 0.0};
    AngleSpec aod;
    AngleSpec aoa;
};

struct LinkGeometry {
    ArrayGeometry tx;
    ArrayGeometry rx;
};

// N_r x N_t; row = receive antenna, column = transmit antenna.
struct ChannelMatrix {
    CMatrix entries;
    int num_paths = 0;

    int nr() const { return static_cast<int>(entries.rows()); }
    int nt() const { return static_cast<int>(entries.cols()); }
};

// H = sqrt(N_r N_t / L) * sum_l alpha_l u_l v_l^H.
ChannelMatrix assemble_channel(std::span<const PathComponent> paths, const ArrayGeometry &tx_geom,
                               const ArrayGeometry &rx_geom);

inline ChannelMatrix assemble_channel(std::span<const PathComponent> paths, const LinkGeometry &link) {
    return assemble_channel(paths, link.tx, link.rx);
}

// Squared Frobenius norm.
double channel_power(const ChannelMatrix &h);

// Per-path steering vectors, in path order.
std::vector<CVector> transmit_steering(std::span<const PathComponent> paths, const ArrayGeometry &tx_geom);
std::vector<CVector> receive_steering(std::span<const PathComponent> paths, const ArrayGeometry &rx_geom);

// Serializable channel instance: {"geometry": {nt, nr, spacing}, "paths": [{gain_re, gain_im, aod_deg, aoa_deg}]}.
// Elevations are written as aod_elev_deg / aoa_elev_deg only when they differ from 90 degrees.
struct ChannelSpec {
    LinkGeometry link;
    std::vector<PathComponent> paths;

    ChannelMatrix assemble() const { return assemble_channel(paths, link); }
};

nlohmann::json to_json(const ChannelSpec &spec);
ChannelSpec channel_spec_from_json(const nlohmann::json &doc);

} // namespace dirbf
