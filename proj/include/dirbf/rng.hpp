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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace dirbf {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Per-trial random stream. The engine is std::mt19937_64 (its output sequence
// is fixed by the standard); the key depends only on (seed, stream, attempt),
// so trials can run in any order or on any thread. Distributions are written
// out here rather than taken from <random>, whose algorithms are unspecified.
class TrialRng {
  public:
    static constexpr const char *kAlgorithm =
        "mt19937_64 keyed by splitmix64(seed, trial, attempt); 53-bit uniforms; CN(0,1) by polar inversion";

    TrialRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t attempt = 0)
        : engine_(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ (attempt * 0xD1B54A32D192ED03ULL))) {}

    // [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Circularly-symmetric complex Gaussian with unit variance: |z|^2 ~ Exp(1),
    // arg z ~ U[0, 2pi).
    std::complex<double> complex_normal() {
        const double radius = std::sqrt(-std::log1p(-uniform()));
        return std::polar(radius, 2.0 * std::numbers::pi * uniform());
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace dirbf
