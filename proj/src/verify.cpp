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

#include "dirbf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirbf/beamformer.hpp"
#include "dirbf/closedform.hpp"
#include "dirbf/errors.hpp"
#include "dirbf/montecarlo.hpp"
#include "dirbf/oracle.hpp"
#include "dirbf/rng.hpp"

namespace dirbf::verify {

namespace {

using closedform::TwoPathParams;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void record(CheckResult &c, double discrepancy) {
    ++c.cases;
    if (!(discrepancy <= c.tolerance))
        ++c.failures;
    if (std::isnan(discrepancy) || discrepancy > c.worst)
        c.worst = std::isnan(discrepancy) ? std::numeric_limits<double>::infinity() : discrepancy;
}

CheckResult make_check(std::string name, double tolerance) {
    CheckResult c;
    c.name = std::move(name);
    c.tolerance = tolerance;
    return c;
}

template <typename T> T pick(TrialRng &rng, std::initializer_list<T> options) {
    const auto n = options.size();
    const auto i = std::min<std::size_t>(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
    return *(options.begin() + i);
}

TwoPathParams draw_params(Regime regime, TrialRng &rng) {
    TwoPathParams p;
    p.mag_a1 = rng.uniform(0.1, 2.0);
    p.mag_a2 = rng.uniform(0.1, 2.0);
    p.phase_diff = rng.uniform(0.0, kTwoPi);
    p.uu_phase = rng.uniform(0.0, kTwoPi);
    p.vv_phase = rng.uniform(0.0, kTwoPi);
    // Bounded away from the flat-objective corners where the argmax is not unique.
    switch (regime) {
    case Regime::v_orth:
        p.uu_mag = rng.uniform(0.05, 1.0);
        p.vv_mag = 0.0;
        p.vv_phase = 0.0;
        break;
    case Regime::u_orth:
        p.uu_mag = 0.0;
        p.uu_phase = 0.0;
        p.vv_mag = rng.uniform(0.05, 0.95);
        break;
    case Regime::u_parallel:
        p.uu_mag = 1.0;
        p.vv_mag = rng.uniform(0.0, 0.95);
        break;
    }
    return p;
}

closedform::AllocationPoint closed_allocation(Regime regime, const TwoPathParams &p) {
    switch (regime) {
    case Regime::v_orth:
        return closedform::beta_opt_v_orth(p);
    case Regime::u_orth:
        return closedform::beta_opt_u_orth(p);
    case Regime::u_parallel:
        return closedform::beta_opt_u_parallel(p);
    }
    return {};
}

const char *regime_name(Regime r) {
    switch (r) {
    case Regime::v_orth:
        return "v_orth";
    case Regime::u_orth:
        return "u_orth";
    case Regime::u_parallel:
        return "u_parallel";
    }
    return "?";
}

std::uint64_t stream_key(std::string_view tag) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char ch : tag)
        h = (h ^ static_cast<unsigned char>(ch)) * 0x100000001B3ULL;
    return h;
}

} // namespace

std::string to_string(Suite s) {
    switch (s) {
    case Suite::prop1:
        return "prop1";
    case Suite::prop2:
        return "prop2";
    case Suite::prop3:
        return "prop3";
    case Suite::prop4:
        return "prop4";
    case Suite::bounds:
        return "bounds";
    }
    return "?";
}

Suite parse_suite(std::string_view name) {
    for (const Suite s : {Suite::prop1, Suite::prop2, Suite::prop3, Suite::prop4, Suite::bounds})
        if (name == to_string(s))
            return s;
    throw ArgumentError("unknown verify suite '" + std::string(name) + "'");
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed(); });
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json doc;
    doc["suite"] = to_string(suite);
    doc["trials"] = trials;
    doc["seed"] = seed;
    doc["passed"] = passed();
    doc["checks"] = nlohmann::json::array();
    for (const auto &c : checks)
        doc["checks"].push_back({{"name", c.name},
                                 {"cases", c.cases},
                                 {"failures", c.failures},
                                 {"worst", c.worst},
                                 {"tolerance", c.tolerance},
                                 {"passed", c.passed()}});
    return doc;
}

std::uint64_t default_trials(Suite s) {
    switch (s) {
    case Suite::prop1:
        return 1000;
    case Suite::prop2:
    case Suite::prop3:
    case Suite::prop4:
        return 500;
    case Suite::bounds:
        return 100;
    }
    return 0;
}

namespace {

// One random instance for the eigenvector battery.
struct EigenInstance {
    std::vector<PathComponent> paths;
    LinkGeometry link;
};

EigenInstance eigen_instance(std::uint64_t seed, std::uint64_t i) {
    TrialRng rng(seed ^ stream_key("prop1"), i);
    McConfig cfg;
    cfg.num_paths = pick(rng, {1, 2, 3, 5});
    cfg.nt = pick(rng, {8, 16, 64});
    cfg.nr = pick(rng, {2, 4});
    cfg.seed = seed;
    return {sample_paths(cfg, i), cfg.link()};
}

CVector power_tx(const ChannelMatrix &h, double &snr) {
    try {
        BeamformerPair bf = optimal_beamformer(h);
        snr = bf.normalized_snr;
        return bf.tx;
    } catch (const ConvergenceError &e) {
        snr = e.best_rayleigh_quotient() / (static_cast<double>(h.nt()) * h.nr());
        return e.best_iterate();
    }
}

} // namespace

CheckResult prop1_span(std::uint64_t trials, std::uint64_t seed) {
    CheckResult c = make_check("prop1_span_residual", 1e-8);
    for (std::uint64_t i = 0; i < trials; ++i) {
        const EigenInstance inst = eigen_instance(seed, i);
        const ChannelMatrix h = assemble_channel(inst.paths, inst.link);
        double snr = 0.0;
        const CVector tx = power_tx(h, snr);
        CMatrix basis(inst.link.tx.num_elements(), static_cast<Eigen::Index>(inst.paths.size()));
        const std::vector<CVector> v = transmit_steering(inst.paths, inst.link.tx);
        for (std::size_t l = 0; l < v.size(); ++l)
            basis.col(static_cast<Eigen::Index>(l)) = v[l];
        record(c, oracle::span_residual(tx, basis));
    }
    return c;
}

CheckResult prop1_reduced_snr(std::uint64_t trials, std::uint64_t seed) {
    CheckResult c = make_check("prop1_reduced_vs_power_snr", 1e-9);
    for (std::uint64_t i = 0; i < trials; ++i) {
        const EigenInstance inst = eigen_instance(seed, i);
        const ChannelMatrix h = assemble_channel(inst.paths, inst.link);
        double power_snr = 0.0;
        power_tx(h, power_snr);
        const double reduced = reduced_optimal_beamformer(inst.paths, inst.link).normalized_snr;
        record(c, std::abs(reduced - power_snr) / std::max(power_snr, 1e-300));
    }
    return c;
}

GridBattery grid_battery(Regime regime, std::uint64_t trials, std::uint64_t seed) {
    const std::string tag = regime_name(regime);
    GridBattery out{make_check(tag + "_beta_vs_grid", 0.0), make_check(tag + "_snr_vs_grid", 1e-6)};
    for (std::uint64_t i = 0; i < trials; ++i) {
        TrialRng rng(seed ^ stream_key(tag), i);
        const TwoPathParams p = draw_params(regime, rng);
        const closedform::AllocationPoint alloc = closed_allocation(regime, p);
        const oracle::TwoPathGridResult grid = oracle::two_path_grid_max(p);
        out.beta.tolerance = grid.beta_step;
        record(out.beta, std::abs(alloc.beta - grid.beta));
        record(out.snr, std::max(0.0, grid.value - closedform::two_path_objective(p, alloc)));
    }
    return out;
}

CheckResult v_orth_equal_gain_exact() {
    CheckResult c = make_check("v_orth_equal_gain_is_two", 0.0);
    TwoPathParams p;
    p.uu_mag = 1.0;
    p.vv_mag = 0.0;
    record(c, std::abs(closedform::delta_snr_v_orth(p).ratio - 2.0));
    return c;
}

CheckResult v_orth_sup() {
    CheckResult c = make_check("v_orth_sup_over_k_uu_grid", 1e-12);
    constexpr int kPoints = 100;
    for (int i = 0; i < kPoints; ++i) {
        // K = a / b log-spaced over [1, 1e4].
        const double k = std::pow(10.0, 4.0 * i / (kPoints - 1));
        for (int j = 0; j < kPoints; ++j) {
            TwoPathParams p;
            p.mag_a1 = std::sqrt(k);
            p.mag_a2 = 1.0;
            p.uu_mag = static_cast<double>(j) / (kPoints - 1);
            record(c, std::max(0.0, closedform::delta_snr_v_orth(p).ratio - 2.0));
        }
    }
    return c;
}

namespace {

struct PeakScan {
    double argmax = 0.0;
    double max = 0.0;
    double step = 0.0;
};

PeakScan u_orth_equal_gain_scan() {
    constexpr int kPoints = 10'001;
    PeakScan s;
    s.step = 1.0 / (kPoints - 1);
    s.max = -1.0;
    for (int i = 0; i < kPoints; ++i) {
        TwoPathParams p;
        p.uu_mag = 0.0;
        p.vv_mag = static_cast<double>(i) * s.step;
        const double r = closedform::delta_snr_u_orth(p).ratio;
        if (r > s.max) {
            s.max = r;
            s.argmax = p.vv_mag;
        }
    }
    return s;
}

} // namespace

CheckResult u_orth_peak_location() {
    const PeakScan s = u_orth_equal_gain_scan();
    CheckResult c = make_check("u_orth_peak_at_sqrt2_minus_1", s.step);
    record(c, std::abs(s.argmax - (std::numbers::sqrt2 - 1.0)));
    return c;
}

CheckResult u_orth_peak_value() {
    const PeakScan s = u_orth_equal_gain_scan();
    CheckResult c = make_check("u_orth_peak_value", 1e-9);
    record(c, std::abs(s.max - (std::numbers::sqrt2 + 1.0) / 2.0));
    return c;
}

CheckResult v_parallel_flatness(std::uint64_t trials, std::uint64_t seed) {
    CheckResult c = make_check("v_parallel_objective_flat_in_beta", 1e-10);
    constexpr int kBetaPoints = 100;
    for (std::uint64_t i = 0; i < trials; ++i) {
        TrialRng rng(seed ^ stream_key("v_parallel"), i);
        TwoPathParams p;
        p.mag_a1 = rng.uniform(0.1, 2.0);
        p.mag_a2 = rng.uniform(0.1, 2.0);
        p.uu_mag = rng.uniform(0.0, 1.0);
        p.uu_phase = rng.uniform(0.0, kTwoPi);
        p.phase_diff = rng.uniform(0.0, kTwoPi);
        p.vv_mag = 1.0;
        p.vv_phase = rng.uniform(0.0, kTwoPi);
        const double theta = rng.uniform(0.0, kTwoPi);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int k = 0; k < kBetaPoints; ++k) {
            const double beta = static_cast<double>(k) / (kBetaPoints - 1);
            const double v = closedform::two_path_objective(p, {beta, theta});
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        record(c, hi - lo);
    }
    return c;
}

CheckResult u_parallel_example() {
    CheckResult c = make_check("u_parallel_example_db", 0.01);
    TwoPathParams p;
    p.uu_mag = 1.0;
    p.vv_mag = 0.9;
    p.phase_diff = std::numbers::pi;
    record(c, std::abs(closedform::delta_snr_u_parallel(p).db() - 10.0 * std::log10(20.0)));
    return c;
}

CheckResult equal_power_limit() {
    CheckResult c = make_check("equal_power_loss_db_large_k", 1e-6);
    TwoPathParams p;
    p.mag_a1 = 1e4;
    p.mag_a2 = 1.0;
    const double loss = 10.0 * std::log10(closedform::snr_dominant_path(p) / closedform::snr_equal_power_coherent(p));
    record(c, std::abs(loss - 10.0 * std::log10(2.0)));
    return c;
}

VerifyReport run(Suite suite, std::uint64_t trials, std::uint64_t seed) {
    VerifyReport r;
    r.suite = suite;
    r.trials = trials == 0 ? default_trials(suite) : trials;
    r.seed = seed;
    auto add_grid = [&](Regime regime) {
        GridBattery g = grid_battery(regime, r.trials, seed);
        r.checks.push_back(std::move(g.beta));
        r.checks.push_back(std::move(g.snr));
    };
    switch (suite) {
    case Suite::prop1:
        r.checks.push_back(prop1_span(r.trials, seed));
        r.checks.push_back(prop1_reduced_snr(r.trials, seed));
        break;
    case Suite::prop2:
        add_grid(Regime::v_orth);
        break;
    case Suite::prop3:
        add_grid(Regime::u_orth);
        break;
    case Suite::prop4:
        add_grid(Regime::u_parallel);
        break;
    case Suite::bounds:
        r.checks.push_back(v_orth_equal_gain_exact());
        r.checks.push_back(v_orth_sup());
        r.checks.push_back(u_orth_peak_location());
        r.checks.push_back(u_orth_peak_value());
        r.checks.push_back(v_parallel_flatness(r.trials, seed));
        r.checks.push_back(u_parallel_example());
        r.checks.push_back(equal_power_limit());
        break;
    }
    return r;
}

} // namespace dirbf::verify
