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

#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

namespace dirbf::cli {

enum class Command { closedform, sweep, ccdf, verify };
enum class Format { csv, json };

std::string to_string(Command c);
std::string to_string(Format f);
Command parse_command(std::string_view name);
Format parse_format(std::string_view name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitVerifyFailed = 4;

// Fully resolved invocation. Parameter keys are the long flag names without
// dashes; values are the strings as given, or the defaults.
struct RunConfig {
    Command command = Command::closedform;
    std::map<std::string, std::string> parameters;
    std::string output_path; // empty: stdout
    Format format = Format::json;

    bool operator==(const RunConfig &) const = default;
};

// Parses flags, reading --config first so that flags override file values.
// Throws CLI::ParseError subclasses for usage problems and ArgumentError or
// RegimeError for values outside their domain.
RunConfig parse_args(int argc, const char *const *argv);

// Config-file text that reproduces `cfg` when passed back through --config.
std::string to_toml(const RunConfig &cfg);
nlohmann::json to_json(const RunConfig &cfg);
RunConfig run_config_from_json(const nlohmann::json &doc);

// Executes a parsed config. Writes the artifact to cfg.output_path or `out`.
int run(const RunConfig &cfg, std::ostream &out, std::ostream &err);

// parse_args + run, with every failure mapped to an exit code and a one-line
// JSON error record on `err`.
int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace dirbf::cli
