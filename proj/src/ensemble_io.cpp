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

#include "twirl/ensemble_io.hpp"

#include <fstream>
#include <sstream>

#include "twirl/errors.hpp"

namespace twirl {

namespace {

std::string digits_of(const std::vector<std::uint8_t> &v) {
    std::string out;
    for (auto c : v) {
        out += static_cast<char>('0' + c);
    }
    return out;
}

std::vector<std::uint8_t> parse_digits(const SystemParams &params, const std::string &text, const char *field) {
    if (static_cast<int>(text.size()) != params.n()) {
        throw ParameterError(std::string("field \"") + field + "\" needs " + std::to_string(params.n()) +
                             " digits, got \"" + text + "\"");
    }
    std::vector<std::uint8_t> out;
    for (char ch : text) {
        if (ch < '0' || ch > '9' || ch - '0' >= params.d()) {
            throw ParameterError(std::string("field \"") + field + "\" has digit outside [0, d): \"" + text + "\"");
        }
        out.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return out;
}

Rational parse_weight(const nlohmann::json &w) {
    if (w.is_string()) {
        return parse_rational(w.get<std::string>());
    }
    if (w.is_number_integer()) {
        return Rational(w.get<long>());
    }
    if (w.is_number_float()) {
        // The shortest round-trip text of the number, read back exactly.
        return parse_rational(w.dump());
    }
    throw ParameterError("weight must be a string or number");
}

}  // namespace

bool is_builtin_ensemble(std::string_view name) {
    for (const char *b : kBuiltinEnsembles) {
        if (name == b) {
            return true;
        }
    }
    return false;
}

Ensemble builtin_ensemble(std::string_view name, const SystemParams &params) {
    if (name == "clifford-uniform") {
        return Ensemble::clifford_uniform(params);
    }
    if (name == "pauli-uniform") {
        return Ensemble::pauli_uniform(params);
    }
    throw ParameterError("unknown builtin ensemble \"" + std::string(name) + "\"");
}

nlohmann::json pauli_string_to_json(const PauliString &p) {
    return {{"x", digits_of(p.label.x)}, {"z", digits_of(p.label.z)}, {"s", p.s}};
}

PauliString pauli_string_from_json(const SystemParams &params, const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("x") || !j.contains("z")) {
        throw ParameterError("Pauli string needs \"x\" and \"z\" digit strings");
    }
    PauliString p;
    p.label.x = parse_digits(params, j.at("x").get<std::string>(), "x");
    p.label.z = parse_digits(params, j.at("z").get<std::string>(), "z");
    long s = j.value("s", 0L);
    if (s < 0 || s >= params.phase_order()) {
        throw ParameterError("phase exponent s=" + std::to_string(s) + " outside [0, " +
                             std::to_string(params.phase_order()) + ")");
    }
    p.s = static_cast<int>(s);
    return p;
}

Ensemble parse_ensemble(const nlohmann::json &doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("d") || !doc.contains("entries")) {
        throw ParameterError("ensemble document needs \"n\", \"d\" and \"entries\"");
    }
    SystemParams params(doc.at("n").get<int>(), doc.at("d").get<int>());
    const auto &entries = doc.at("entries");
    if (!entries.is_array()) {
        throw ParameterError("\"entries\" must be an array");
    }
    std::vector<EnsembleEntry> out;
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto &entry = entries[i];
        try {
            Rational weight = parse_weight(entry.at("weight"));
            std::vector<PauliString> xs;
            std::vector<PauliString> zs;
            for (const auto &p : entry.at("x_images")) {
                xs.push_back(pauli_string_from_json(params, p));
            }
            for (const auto &p : entry.at("z_images")) {
                zs.push_back(pauli_string_from_json(params, p));
            }
            CliffordTableau c = CliffordTableau::unchecked(params, std::move(xs), std::move(zs));
            ValidityReport r = tableau_validate(c);
            if (!r.ok) {
                throw ContractViolation("invalid tableau: " + r.message);
            }
            out.push_back(EnsembleEntry{weight, CliffordTableau::from_images(params, c.x_images(), c.z_images())});
        } catch (const nlohmann::json::exception &e) {
            throw ParameterError("entry " + std::to_string(i) + ": " + e.what());
        } catch (const ParameterError &e) {
            throw ParameterError("entry " + std::to_string(i) + ": " + e.what());
        } catch (const ContractViolation &e) {
            throw ContractViolation("entry " + std::to_string(i) + ": " + e.what());
        }
    }
    return Ensemble(params, std::move(out));
}

Ensemble parse_ensemble_text(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParameterError("malformed ensemble JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    try {
        return parse_ensemble(doc);
    } catch (const nlohmann::json::exception &e) {
        throw ParameterError(std::string("ensemble document: ") + e.what());
    }
}

Ensemble load_ensemble(std::string_view source, const std::optional<SystemParams> &params) {
    if (is_builtin_ensemble(source)) {
        if (!params) {
            throw ParameterError("builtin ensemble \"" + std::string(source) + "\" needs --n and --d");
        }
        return builtin_ensemble(source, *params);
    }
    std::ifstream in{std::string(source)};
    if (!in) {
        throw ParameterError("cannot read ensemble file \"" + std::string(source) + "\"");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    Ensemble e = parse_ensemble_text(buffer.str());
    if (params && !(e.params() == *params)) {
        throw ParameterError("ensemble file has (n, d) = (" + std::to_string(e.params().n()) + ", " +
                             std::to_string(e.params().d()) + ") but (" + std::to_string(params->n()) + ", " +
                             std::to_string(params->d()) + ") was requested");
    }
    return e;
}

nlohmann::json ensemble_to_json(const Ensemble &e) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &entry : e.entries()) {
        nlohmann::json xs = nlohmann::json::array();
        nlohmann::json zs = nlohmann::json::array();
        for (const auto &p : entry.element.x_images()) {
            xs.push_back(pauli_string_to_json(p));
        }
        for (const auto &p : entry.element.z_images()) {
            zs.push_back(pauli_string_to_json(p));
        }
        entries.push_back({{"weight", to_string(entry.weight)}, {"x_images", xs}, {"z_images", zs}});
    }
    return {{"n", e.params().n()}, {"d", e.params().d()}, {"entries", entries}};
}

}  // namespace twirl
