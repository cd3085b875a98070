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

#include <vector>

#include <benchmark/benchmark.h>

#include "dirbf/beamformer.hpp"
#include "dirbf/montecarlo.hpp"
#include "dirbf/oracle.hpp"

namespace {

using namespace dirbf;

std::vector<PathComponent> three_paths() {
    return {{{1.0, 0.3}, AngleSpec::from_degrees(70), AngleSpec::from_degrees(100)},
            {{-0.6, 0.5}, AngleSpec::from_degrees(95), AngleSpec::from_degrees(60)},
            {{0.2, -0.4}, AngleSpec::from_degrees(120), AngleSpec::from_degrees(130)}};
}

const LinkGeometry kLink{ArrayGeometry(16), ArrayGeometry(4)};
const GridSpec kGrid{11, 24, 50'000'000};

closedform::TwoPathParams two_path() {
    closedform::TwoPathParams p;
    p.mag_a1 = 1.3;
    p.mag_a2 = 0.7;
    p.phase_diff = 0.4;
    p.uu_mag = 0.3;
    p.uu_phase = 1.1;
    p.vv_mag = 0.6;
    p.vv_phase = -0.8;
    return p;
}

McConfig mc_config() {
    McConfig cfg;
    cfg.num_paths = 3;
    cfg.trials = 500;
    return cfg;
}

void BM_GridSearchSerial(benchmark::State &state) {
    const auto paths = three_paths();
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::grid_search_beamformer(paths, kLink, kGrid));
}

void BM_GridSearchOpenMP(benchmark::State &state) {
    const auto paths = three_paths();
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_search_beamformer(paths, kLink, kGrid));
}

void BM_TwoPathGridSerial(benchmark::State &state) {
    const auto p = two_path();
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::serial::two_path_grid_max(p));
}

void BM_TwoPathGridOpenMP(benchmark::State &state) {
    const auto p = two_path();
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::two_path_grid_max(p));
}

void BM_CcdfSerial(benchmark::State &state) {
    const auto cfg = mc_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::run_ccdf(cfg));
}

void BM_CcdfOpenMP(benchmark::State &state) {
    const auto cfg = mc_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_ccdf(cfg));
}

} // namespace

BENCHMARK(BM_GridSearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSearchOpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoPathGridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoPathGridOpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CcdfSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CcdfOpenMP)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
