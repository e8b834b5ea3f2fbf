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

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "twirl/clifford.hpp"

namespace twirl {

/// Built-in names accepted by load_ensemble.
inline constexpr const char *kBuiltinEnsembles[] = {"clifford-uniform", "pauli-uniform"};

bool is_builtin_ensemble(std::string_view name);

/// Builds a named ensemble for (n, d).
Ensemble builtin_ensemble(std::string_view name, const SystemParams &params);

/// Parses the ensemble file format
///   {"n": int, "d": int, "entries": [{"weight": "num/den",
///     "x_images": [{"x": "digits", "z": "digits", "s": int}, ...], "z_images": [...]}]}
/// Weights may also be exact decimals ("0.25"). Errors name the offending
/// entry, or the weight deficit. Throws ParameterError or ContractViolation.
Ensemble parse_ensemble(const nlohmann::json &doc);
Ensemble parse_ensemble_text(std::string_view text);

/// A builtin name (needs params) or a path to an ensemble file. When params
/// are given for a file they must match the file's (n, d).
Ensemble load_ensemble(std::string_view source, const std::optional<SystemParams> &params);

nlohmann::json ensemble_to_json(const Ensemble &e);
nlohmann::json pauli_string_to_json(const PauliString &p);
PauliString pauli_string_from_json(const SystemParams &params, const nlohmann::json &j);

}  // namespace twirl
