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

namespace dirbf::verify {

enum class Suite { prop1, prop2, prop3, prop4, bounds };

std::string to_string(Suite s);
Suite parse_suite(std::string_view name);

struct CheckResult {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    double worst = 0.0;     // worst discrepancy observed
    double tolerance = 0.0; // pass threshold for `worst`

    bool passed() const { return failures == 0; }
};

struct VerifyReport {
    Suite suite = Suite::prop1;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool passed() const;
    nlohmann::json to_json() const;
};

// Default draw counts per suite when trials is 0.
std::uint64_t default_trials(Suite s);

VerifyReport run(Suite suite, std::uint64_t trials, std::uint64_t seed);

// Individual batteries, also used by the acceptance tests.
CheckResult prop1_span(std::uint64_t trials, std::uint64_t seed);
CheckResult prop1_reduced_snr(std::uint64_t trials, std::uint64_t seed);

// Two-path regimes with a closed-form allocation, checked against the
// 201 x 360 (beta, phi) grid oracle.
enum class Regime { v_orth, u_orth, u_parallel };

struct GridBattery {
    CheckResult beta; // |beta_closed - beta_grid| within one beta step
    CheckResult snr;  // grid optimum - closed-form objective <= 1e-6
};

GridBattery grid_battery(Regime regime, std::uint64_t trials, std::uint64_t seed);
CheckResult v_orth_equal_gain_exact();
CheckResult v_orth_sup();
CheckResult u_orth_peak_location();
CheckResult u_orth_peak_value();
CheckResult u_parallel_example();
CheckResult equal_power_limit();
CheckResult v_parallel_flatness(std::uint64_t trials, std::uint64_t seed);

} // namespace dirbf::verify
