// Copyright 2026 The twirl-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "twirl/design.hpp"

namespace twirl {

inline constexpr const char *kCommands[] = {"verify-design",        "check-mixing",    "check-2mixing",
                                            "frame-potential",      "witness-not-4-design", "witness-qudit-3",
                                            "decompose-w",          "group-census"};

struct RunConfig {
    std::string command;
    std::optional<int> n;
    std::optional<int> d;
    std::optional<int> k;
    /// Builtin name or ensemble file path.
    std::string ensemble = "clifford-uniform";
    std::string mode = "exhaustive";
    std::uint64_t samples = 0;
    std::optional<std::uint64_t> seed;
    /// Empty: report goes to stdout.
    std::string out;
    size_t witness_cap = 4;
    int threads = 1;
    /// Cycle notation for decompose-w.
    std::string perm;
    /// Records wall time and kernel choice in the report, which makes it
    /// machine dependent.
    bool timing = false;
};

enum ExitCode : int { kExitPass = 0, kExitNegative = 1, kExitError = 2 };

struct RunResult {
    int exit_code = kExitError;
    nlohmann::ordered_json report;
    /// Set when exit_code is kExitError.
    std::string error;
};

/// Executes one command. Never throws: errors come back as exit code 2 with a message.
RunResult run(const RunConfig &config);

/// Runs and writes the report (to config.out or stdout); errors go to stderr.
int run_and_write(const RunConfig &config);

nlohmann::ordered_json tensor_to_json(const SystemParams &params, const PauliTensor &t);
nlohmann::ordered_json witness_to_json(const SystemParams &params, const TwirlWitness &w);
nlohmann::ordered_json design_report_to_json(const DesignReport &r, bool timing);
nlohmann::ordered_json mixing_report_to_json(const SystemParams &params, const MixingReport &r);
nlohmann::ordered_json census_report_to_json(const CensusReport &r);

}  // namespace twirl
