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

#include <omp.h>

#include "dirbf/beamformer.hpp"
#include "dirbf/montecarlo.hpp"
#include "dirbf/oracle.hpp"
#include "dirbf/rng.hpp"

using namespace dirbf;

namespace {

struct ThreadGuard {
    int saved = omp_get_max_threads();
    ~ThreadGuard() { omp_set_num_threads(saved); }
};

} // namespace

TEST_CASE("run_ccdf matches the serial reference for every thread count") {
    ThreadGuard guard;
    McConfig cfg;
    cfg.num_paths = 3;
    cfg.trials = 700;
    cfg.seed = 99;
    const CcdfTable reference = serial::run_ccdf(cfg);
    for (int threads : {1, 2, 3, 8}) {
        omp_set_num_threads(threads);
        CHECK(run_ccdf(cfg) == reference);
    }
}

TEST_CASE("grid search matches the serial reference, including the argmax index") {
    ThreadGuard guard;
    TrialRng rng(71, 0);
    for (int i = 0; i < 4; ++i) {
        std::vector<PathComponent> ps;
        for (int l = 0; l < 3; ++l)
            ps.push_back({rng.complex_normal(), AngleSpec::from_degrees(rng.uniform(30, 150)),
                          AngleSpec::from_degrees(rng.uniform(30, 150))});
        const LinkGeometry link{ArrayGeometry(8), ArrayGeometry(4)};
        const GridSpec grid{9, 16, 1'000'000};
        const GridSearchResult ref = serial::grid_search_beamformer(ps, link, grid);
        for (int threads : {1, 2, 5}) {
            omp_set_num_threads(threads);
            const GridSearchResult par = grid_search_beamformer(ps, link, grid);
            CHECK(par.index == ref.index);
            CHECK(par.pair.normalized_snr == ref.pair.normalized_snr);
            CHECK(par.pair.tx == ref.pair.tx);
        }
    }
}

TEST_CASE("grid search tie-break picks the lowest index") {
    ThreadGuard guard;
    // Parallel v: the objective is flat, so every admissible point ties.
    const std::vector<PathComponent> ps{{{1.0, 0.0}, AngleSpec::from_degrees(80), AngleSpec::from_degrees(70)},
                                        {{0.5, 0.5}, AngleSpec::from_degrees(80), AngleSpec::from_degrees(120)}};
    const LinkGeometry link{ArrayGeometry(8), ArrayGeometry(4)};
    const GridSpec grid{7, 8, 1'000'000};
    const GridSearchResult ref = serial::grid_search_beamformer(ps, link, grid);
    for (int threads : {2, 4, 7}) {
        omp_set_num_threads(threads);
        CHECK(grid_search_beamformer(ps, link, grid).index == ref.index);
    }
}

TEST_CASE("two-path grid oracle matches the serial reference") {
    ThreadGuard guard;
    closedform::TwoPathParams p;
    p.mag_a1 = 1.2;
    p.uu_mag = 0.5;
    p.vv_mag = 0.5;
    p.phase_diff = 2.0;
    const auto ref = oracle::serial::two_path_grid_max(p);
    for (int threads : {1, 2, 6}) {
        omp_set_num_threads(threads);
        const auto par = oracle::two_path_grid_max(p);
        CHECK(par.index == ref.index);
        CHECK(par.value == ref.value);
    }
}
