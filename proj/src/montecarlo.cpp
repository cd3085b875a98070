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

#include "dirbf/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "dirbf/beamformer.hpp"
#include "dirbf/numfmt.hpp"
#include "dirbf/rng.hpp"

namespace dirbf {

namespace {

constexpr std::uint32_t kMaxResamples = 64;
constexpr double kDegenerateGainPower = 1e-24;

} // namespace

std::string to_string(GainModel) { return "complex_gaussian"; }

std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::bidirectional:
        return "bidirectional";
    case Scheme::dominant_tx_mf_rx:
        return "dominant_tx_mf_rx";
    case Scheme::equal_power:
        return "equal_power";
    }
    return "?";
}

GainModel parse_gain_model(std::string_view name) {
    if (name == "complex_gaussian")
        return GainModel::complex_gaussian;
    throw ArgumentError("unknown gain model '" + std::string(name) + "'");
}

Scheme parse_scheme(std::string_view name) {
    if (name == "bidirectional")
        return Scheme::bidirectional;
    if (name == "dominant_tx_mf_rx")
        return Scheme::dominant_tx_mf_rx;
    if (name == "equal_power")
        return Scheme::equal_power;
    throw ArgumentError("unknown scheme '" + std::string(name) + "'");
}

void McConfig::validate() const {
    if (num_paths < 1)
        throw ArgumentError("num_paths must be at least 1");
    if (nt < 1 || nr < 1)
        throw ArgumentError("antenna counts must be at least 1");
    if (!(spacing_wavelengths > 0.0))
        throw ArgumentError("spacing must be positive");
    if (trials < 1)
        throw ArgumentError("trials must be at least 1");
    if (!(fov_deg > 0.0 && fov_deg <= 180.0))
        throw ArgumentError("fov_deg must lie in (0, 180]");
    if (scheme == Scheme::equal_power && num_paths != 2)
        throw UnsupportedError("equal_power scheme needs exactly two paths");
}

LinkGeometry McConfig::link() const { return {ArrayGeometry(nt, spacing_wavelengths), ArrayGeometry(nr, spacing_wavelengths)}; }

nlohmann::json to_json(const McConfig &cfg) {
    return {{"num_paths", cfg.num_paths},
            {"nt", cfg.nt},
            {"nr", cfg.nr},
            {"spacing_wavelengths", cfg.spacing_wavelengths},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"fov_deg", cfg.fov_deg},
            {"gain_model", to_string(cfg.gain_model)},
            {"scheme", to_string(cfg.scheme)},
            {"rng", TrialRng::kAlgorithm}};
}

CcdfTable make_ccdf(std::vector<double> samples_db) {
    CcdfTable t;
    std::sort(samples_db.begin(), samples_db.end());
    const auto n = samples_db.size();
    t.ccdf.resize(n);
    // P(X > x_i): count of strictly larger samples. Walk ties as a block.
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && samples_db[j + 1] == samples_db[i])
            ++j;
        const double above = static_cast<double>(n - 1 - j) / static_cast<double>(n);
        for (std::size_t k = i; k <= j; ++k)
            t.ccdf[k] = above;
        i = j + 1;
    }
    t.samples_db = std::move(samples_db);
    return t;
}

std::vector<PathComponent> sample_paths(const McConfig &cfg, std::uint64_t trial_index, std::uint64_t attempt) {
    TrialRng rng(cfg.seed, trial_index, attempt);
    const double lo = 90.0 - cfg.fov_deg / 2.0;
    const double hi = 90.0 + cfg.fov_deg / 2.0;
    std::vector<PathComponent> paths(static_cast<std::size_t>(cfg.num_paths));
    for (auto &p : paths) {
        p.gain = rng.complex_normal();
        p.aod = AngleSpec::from_degrees(rng.uniform(lo, hi));
        p.aoa = AngleSpec::from_degrees(rng.uniform(lo, hi));
    }
    return paths;
}

TrialOutcome run_trial(const McConfig &cfg, std::uint64_t trial_index) {
    const LinkGeometry link = cfg.link();
    TrialOutcome out;

    std::vector<PathComponent> paths = sample_paths(cfg, trial_index);
    auto gain_power = [](const std::vector<PathComponent> &ps) {
        double s = 0.0;
        for (const auto &p : ps)
            s += std::norm(p.gain);
        return s;
    };
    while (gain_power(paths) < kDegenerateGainPower) {
        if (++out.resamples > kMaxResamples)
            throw DegenerateChannelError("trial " + std::to_string(trial_index) + ": every redraw was degenerate");
        paths = sample_paths(cfg, trial_index, out.resamples);
    }

    const ChannelMatrix h = assemble_channel(paths, link);
    double optimal = 0.0;
    try {
        optimal = optimal_beamformer(h).normalized_snr;
    } catch (const ConvergenceError &e) {
        optimal = e.best_rayleigh_quotient() / (static_cast<double>(cfg.nt) * cfg.nr);
        out.nonconverged = true;
    }

    double scheme = 0.0;
    switch (cfg.scheme) {
    case Scheme::bidirectional:
        scheme = bidirectional_beamformer(paths, link).normalized_snr;
        break;
    case Scheme::dominant_tx_mf_rx:
        scheme = dominant_path_beamformer(paths, link).normalized_snr;
        break;
    case Scheme::equal_power:
        scheme = equal_power_beamformer(paths, link).normalized_snr;
        break;
    }
    out.delta_snr_db = 10.0 * std::log10(optimal / scheme);
    return out;
}

namespace {

CcdfTable collect(std::vector<TrialOutcome> &outcomes) {
    std::vector<double> samples(outcomes.size());
    std::uint64_t resampled = 0;
    std::uint64_t nonconverged = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        samples[i] = outcomes[i].delta_snr_db;
        resampled += outcomes[i].resamples > 0 ? 1 : 0;
        nonconverged += outcomes[i].nonconverged ? 1 : 0;
    }
    CcdfTable t = make_ccdf(std::move(samples));
    t.resampled_trials = resampled;
    t.nonconverged_trials = nonconverged;
    return t;
}

} // namespace

CcdfTable run_ccdf(const McConfig &cfg) {
    cfg.validate();
    const auto n = static_cast<std::int64_t>(cfg.trials);
    std::vector<TrialOutcome> outcomes(cfg.trials);
    std::exception_ptr failure;

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            outcomes[static_cast<std::size_t>(i)] = run_trial(cfg, static_cast<std::uint64_t>(i));
        } catch (...) {
#pragma omp critical(dirbf_mc_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return collect(outcomes);
}

namespace serial {

CcdfTable run_ccdf(const McConfig &cfg) {
    cfg.validate();
    std::vector<TrialOutcome> outcomes(cfg.trials);
    for (std::uint64_t i = 0; i < cfg.trials; ++i)
        outcomes[i] = run_trial(cfg, i);
    return collect(outcomes);
}

} // namespace serial

double percentile(const CcdfTable &table, double p) {
    if (table.samples_db.empty())
        throw ArgumentError("percentile of an empty table");
    if (!(p > 0.0 && p < 1.0))
        throw ArgumentError("percentile p must lie in (0, 1)");
    const auto n = table.samples_db.size();
    auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    return table.samples_db[rank - 1];
}

std::string ccdf_to_csv(const CcdfTable &table, std::string_view preamble) {
    std::string out(preamble);
    out += "delta_snr_db,ccdf\n";
    for (std::size_t i = 0; i < table.samples_db.size(); ++i) {
        out += format_double(table.samples_db[i]);
        out += ',';
        out += format_double(table.ccdf[i]);
        out += '\n';
    }
    return out;
}

nlohmann::json ccdf_to_json(const CcdfTable &table, const McConfig &cfg) {
    nlohmann::json doc;
    doc["config"] = to_json(cfg);
    doc["resampled_trials"] = table.resampled_trials;
    doc["nonconverged_trials"] = table.nonconverged_trials;
    if (!table.samples_db.empty()) {
        doc["median_db"] = median(table);
        doc["p90_db"] = percentile(table, 0.9);
    }
    doc["delta_snr_db"] = table.samples_db;
    doc["ccdf"] = table.ccdf;
    return doc;
}

} // namespace dirbf
