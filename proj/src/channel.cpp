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

#include "dirbf/channel.hpp"

#include <cmath>

namespace dirbf {

ChannelMatrix assemble_channel(std::span<const PathComponent> paths, const ArrayGeometry &tx_geom,
                               const ArrayGeometry &rx_geom) {
    if (paths.empty())
        throw ArgumentError("assemble_channel: at least one path is required");

    const int nt = tx_geom.num_elements();
    const int nr = rx_geom.num_elements();
    const double scale = std::sqrt(static_cast<double>(nr) * nt / static_cast<double>(paths.size()));

    ChannelMatrix h{CMatrix::Zero(nr, nt), static_cast<int>(paths.size())};
    for (const auto &p : paths) {
        if (!std::isfinite(p.gain.real()) || !std::isfinite(p.gain.imag()))
            throw ArgumentError("assemble_channel: path gain must be finite");
        const CVector u = steering_vector(rx_geom, p.aoa);
        const CVector v = steering_vector(tx_geom, p.aod);
        h.entries.noalias() += (scale * p.gain) * (u * v.adjoint());
    }
    return h;
}

double channel_power(const ChannelMatrix &h) { return h.entries.squaredNorm(); }

std::vector<CVector> transmit_steering(std::span<const PathComponent> paths, const ArrayGeometry &tx_geom) {
    std::vector<CVector> out;
    out.reserve(paths.size());
    for (const auto &p : paths)
        out.push_back(steering_vector(tx_geom, p.aod));
    return out;
}

std::vector<CVector> receive_steering(std::span<const PathComponent> paths, const ArrayGeometry &rx_geom) {
    std::vector<CVector> out;
    out.reserve(paths.size());
    for (const auto &p : paths)
        out.push_back(steering_vector(rx_geom, p.aoa));
    return out;
}

nlohmann::json to_json(const ChannelSpec &spec) {
    if (spec.link.tx.spacing_wavelengths() != spec.link.rx.spacing_wavelengths())
        throw ArgumentError("channel JSON stores one spacing for both arrays");
    nlohmann::json doc;
    doc["geometry"] = {{"nt", spec.link.tx.num_elements()},
                       {"nr", spec.link.rx.num_elements()},
                       {"spacing", spec.link.tx.spacing_wavelengths()}};
    auto &paths = doc["paths"] = nlohmann::json::array();
    for (const auto &p : spec.paths) {
        nlohmann::json jp = {{"gain_re", p.gain.real()},
                             {"gain_im", p.gain.imag()},
                             {"aod_deg", rad_to_deg(p.aod.azimuth_rad())},
                             {"aoa_deg", rad_to_deg(p.aoa.azimuth_rad())}};
        if (std::abs(p.aod.elevation_rad() - kPi / 2) > 1e-12)
            jp["aod_elev_deg"] = rad_to_deg(p.aod.elevation_rad());
        if (std::abs(p.aoa.elevation_rad() - kPi / 2) > 1e-12)
            jp["aoa_elev_deg"] = rad_to_deg(p.aoa.elevation_rad());
        paths.push_back(std::move(jp));
    }
    return doc;
}

ChannelSpec channel_spec_from_json(const nlohmann::json &doc) {
    try {
        const auto &g = doc.at("geometry");
        const double spacing = g.value("spacing", 0.5);
        ChannelSpec spec{{ArrayGeometry(g.at("nt").get<int>(), spacing), ArrayGeometry(g.at("nr").get<int>(), spacing)},
                         {}};
        for (const auto &jp : doc.at("paths")) {
            PathComponent p;
            p.gain = {jp.at("gain_re").get<double>(), jp.at("gain_im").get<double>()};
            p.aod = AngleSpec::from_degrees(jp.at("aod_deg").get<double>(), jp.value("aod_elev_deg", 90.0));
            p.aoa = AngleSpec::from_degrees(jp.at("aoa_deg").get<double>(), jp.value("aoa_elev_deg", 90.0));
            spec.paths.push_back(p);
        }
        if (spec.paths.empty())
            throw ArgumentError("channel JSON has no paths");
        return spec;
    } catch (const nlohmann::json::exception &e) {
        throw ArgumentError(std::string("malformed channel JSON: ") + e.what());
    }
}

} // namespace dirbf
