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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dirbf/errors.hpp"
#include "dirbf/montecarlo.hpp"
#include "dirbf/rng.hpp"

using namespace dirbf;

namespace {

nlohmann::json load_fixture(const std::string &name) {
    std::ifstream f(std::string(DIRBF_FIXTURE_DIR) + "/" + name);
    REQUIRE(f.good());
    return nlohmann::json::parse(f);
}

double sort_and_index(std::vector<double> xs, double p) {
    std::sort(xs.begin(), xs.end());
    const auto n = static_cast<double>(xs.size());
    std::size_t k = 0;
    while (static_cast<double>(k + 1) < p * n)
        ++k;
    return xs[k];
}

} // namespace

TEST_CASE("config validation and enum names") {
    McConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
    cfg = McConfig{};
    cfg.fov_deg = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
    cfg.fov_deg = 181.0;
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
    cfg = McConfig{};
    cfg.scheme = Scheme::equal_power;
    cfg.num_paths = 3;
    CHECK_THROWS_AS(cfg.validate(), UnsupportedError);
    for (Scheme s : {Scheme::bidirectional, Scheme::dominant_tx_mf_rx, Scheme::equal_power})
        CHECK(parse_scheme(to_string(s)) == s);
    CHECK_THROWS_AS(parse_scheme("codebook"), ArgumentError);
    CHECK(parse_gain_model("complex_gaussian") == GainModel::complex_gaussian);
}

TEST_CASE("sample_paths is deterministic, in range, and CN(0,1)") {
    McConfig cfg;
    cfg.num_paths = 3;
    cfg.fov_deg = 100.0;
    const auto a = sample_paths(cfg, 17);
    const auto b = sample_paths(cfg, 17);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].gain == b[i].gain);
        CHECK(a[i].aod == b[i].aod);
        CHECK(a[i].aoa == b[i].aoa);
    }
    CHECK(sample_paths(cfg, 18)[0].gain != a[0].gain);

    double power = 0.0;
    std::size_t n = 0;
    for (std::uint64_t t = 0; t < 100'000 / 3 + 1; ++t) {
        for (const auto &p : sample_paths(cfg, t)) {
            power += std::norm(p.gain);
            ++n;
            for (const AngleSpec &ang : {p.aod, p.aoa}) {
                const double deg = ang.azimuth_rad() * 180.0 / kPi;
                CHECK(deg >= 40.0 - 1e-9);
                CHECK(deg <= 140.0 + 1e-9);
            }
        }
    }
    CHECK(power / static_cast<double>(n) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("single path gives zero loss") {
    McConfig cfg;
    cfg.num_paths = 1;
    cfg.trials = 500;
    const CcdfTable t = run_ccdf(cfg);
    REQUIRE(t.samples_db.size() == 500);
    for (double x : t.samples_db)
        CHECK(std::abs(x) < 1e-6);
}

TEST_CASE("CCDF table structure and nonnegativity") {
    McConfig cfg;
    cfg.num_paths = 3;
    cfg.trials = 2000;
    const CcdfTable t = run_ccdf(cfg);
    REQUIRE(t.samples_db.size() == 2000);
    CHECK(std::is_sorted(t.samples_db.begin(), t.samples_db.end()));
    for (std::size_t i = 0; i < t.ccdf.size(); ++i) {
        CHECK(t.samples_db[i] >= -1e-9);
        if (i > 0)
            CHECK(t.ccdf[i] <= t.ccdf[i - 1]);
    }
    CHECK(t.ccdf.back() == 0.0);
    CHECK(t.ccdf.front() == doctest::Approx(1999.0 / 2000));
    CHECK(percentile(t, 0.9) >= median(t));
    CHECK(run_ccdf(cfg) == t);
}

TEST_CASE("make_ccdf handles ties") {
    const CcdfTable t = make_ccdf({2.0, 1.0, 1.0, 3.0});
    CHECK(t.samples_db == std::vector<double>{1.0, 1.0, 2.0, 3.0});
    CHECK(t.ccdf == std::vector<double>{0.5, 0.5, 0.25, 0.0});
}

TEST_CASE("alternative schemes") {
    McConfig cfg;
    cfg.trials = 300;
    cfg.scheme = Scheme::dominant_tx_mf_rx;
    const CcdfTable dom = run_ccdf(cfg);
    cfg.scheme = Scheme::bidirectional;
    const CcdfTable bid = run_ccdf(cfg);
    cfg.scheme = Scheme::equal_power;
    const CcdfTable eq = run_ccdf(cfg);
    CHECK(dom.samples_db.front() >= -1e-9);
    CHECK(eq.samples_db.front() >= -1e-9);
    // Matched-filter receive is never worse than steering to the same path.
    CHECK(median(dom) <= median(bid) + 1e-12);
}

TEST_CASE("golden L = 2 median") {
    const nlohmann::json fx = load_fixture("ccdf_l2_median.json");
    McConfig cfg;
    cfg.num_paths = fx.at("num_paths");
    cfg.nt = fx.at("nt");
    cfg.nr = fx.at("nr");
    cfg.spacing_wavelengths = fx.at("spacing_wavelengths");
    cfg.trials = fx.at("trials");
    cfg.seed = fx.at("seed");
    cfg.fov_deg = fx.at("fov_deg");
    cfg.scheme = parse_scheme(fx.at("scheme").get<std::string>());
    const CcdfTable t = run_ccdf(cfg);
    CHECK(median(t) == doctest::Approx(fx.at("median_db").get<double>()).epsilon(1e-9));
    CHECK(percentile(t, 0.9) == doctest::Approx(fx.at("p90_db").get<double>()).epsilon(1e-9));
}

TEST_CASE("percentile") {
    const CcdfTable zeros = make_ccdf(std::vector<double>(10, 0.0));
    for (double p : {0.01, 0.5, 0.99})
        CHECK(percentile(zeros, p) == 0.0);
    const CcdfTable five = make_ccdf({4.0, 0.0, 3.0, 1.0, 2.0});
    CHECK(median(five) == 2.0);
    CHECK_THROWS_AS(percentile(CcdfTable{}, 0.5), ArgumentError);
    CHECK_THROWS_AS(percentile(five, 1.0), ArgumentError);

    TrialRng rng(61, 0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> xs(1 + static_cast<std::size_t>(rng.uniform() * 500));
        for (auto &x : xs)
            x = rng.uniform(-3.0, 10.0);
        CHECK(percentile(make_ccdf(xs), 0.9) == sort_and_index(xs, 0.9));
    }
}

TEST_CASE("CSV and JSON serialization") {
    const CcdfTable t = make_ccdf({0.5, 0.25});
    CHECK(ccdf_to_csv(t) == "delta_snr_db,ccdf\n0.25,0.5\n0.5,0\n");
    CHECK(ccdf_to_csv(t, "# x\n").rfind("# x\ndelta_snr_db,ccdf\n", 0) == 0);
    McConfig cfg;
    const nlohmann::json j = ccdf_to_json(t, cfg);
    CHECK(j.at("config").at("nt") == 64);
    CHECK(j.at("config").at("rng") == TrialRng::kAlgorithm);
    CHECK(j.at("median_db") == 0.25);
    CHECK(j.at("delta_snr_db").size() == 2);
}
