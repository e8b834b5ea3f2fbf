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

#include "twirl/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include "twirl/ensemble_io.hpp"
#include "twirl/errors.hpp"
#include "twirl/kernels/tuple_images.hpp"

namespace twirl {

namespace {

using ojson = nlohmann::ordered_json;

ojson params_json(const SystemParams &params, std::optional<int> k) {
    ojson p;
    p["n"] = params.n();
    p["d"] = params.d();
    if (k) {
        p["k"] = *k;
    }
    p["phase_order"] = params.phase_order();
    return p;
}

SystemParams require_params(const RunConfig &c) {
    if (!c.n || !c.d) {
        throw ParameterError(c.command + " needs --n and --d");
    }
    return SystemParams(*c.n, *c.d);
}

int require_k(const RunConfig &c) {
    if (!c.k) {
        throw ParameterError(c.command + " needs --k");
    }
    if (*c.k < 1) {
        throw ParameterError("--k must be >= 1");
    }
    return *c.k;
}

Ensemble ensemble_for(const RunConfig &c) {
    std::optional<SystemParams> params;
    if (c.n && c.d) {
        params = SystemParams(*c.n, *c.d);
    } else if (is_builtin_ensemble(c.ensemble)) {
        throw ParameterError("builtin ensemble \"" + c.ensemble + "\" needs --n and --d");
    }
    return load_ensemble(c.ensemble, params);
}

ojson base_report(const std::string &check, const SystemParams &params, std::optional<int> k,
                  const std::string &ensemble) {
    ojson r;
    r["check"] = check;
    r["params"] = params_json(params, k);
    if (!ensemble.empty()) {
        r["ensemble"] = ensemble;
    }
    return r;
}

std::int64_t elapsed_since(std::chrono::steady_clock::time_point start, bool timing) {
    if (!timing) {
        return 0;
    }
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

RunResult run_command(const RunConfig &c) {
    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    const std::string &cmd = c.command;
    if (c.mode != "exhaustive" && c.mode != "random") {
        throw ParameterError("--mode must be exhaustive or random, got \"" + c.mode + "\"");
    }
    if (c.threads < 1) {
        throw ParameterError("--threads must be >= 1");
    }

    if (cmd == "verify-design") {
        const int k = require_k(c);
        Ensemble e = ensemble_for(c);
        VerifyOptions opts;
        opts.witness_cap = c.witness_cap;
        opts.threads = c.threads;
        if (c.mode == "random") {
            if (!c.seed) {
                throw ParameterError("--mode random needs --seed");
            }
            opts.mode = SweepMode::Random;
            opts.samples = c.samples;
            opts.seed = *c.seed;
        }
        DesignReport r = verify_k_design(e, k, opts);
        result.report = base_report(cmd, e.params(), k, c.ensemble);
        ojson body = design_report_to_json(r, c.timing);
        for (auto it = body.begin(); it != body.end(); ++it) {
            if (it.key() != "check" && it.key() != "params") {
                result.report[it.key()] = it.value();
            }
        }
        result.exit_code = r.pass() ? kExitPass : kExitNegative;
    } else if (cmd == "check-mixing" || cmd == "check-2mixing") {
        Ensemble e = ensemble_for(c);
        MixingReport r = cmd == "check-mixing" ? check_pauli_mixing(e) : check_pauli_2_mixing(e);
        result.report = base_report(cmd, e.params(), std::nullopt, c.ensemble);
        ojson body = mixing_report_to_json(e.params(), r);
        for (auto it = body.begin(); it != body.end(); ++it) {
            result.report[it.key()] = it.value();
        }
        result.exit_code = r.pass ? kExitPass : kExitNegative;
    } else if (cmd == "frame-potential") {
        const int k = require_k(c);
        Ensemble e = ensemble_for(c);
        Rational fp = frame_potential(e, k);
        BigInt haar = haar_frame_potential(k, e.params().dim());
        const bool equal = fp == Rational(haar);
        result.report = base_report(cmd, e.params(), k, c.ensemble);
        result.report["pass"] = equal;
        result.report["counts"] = {{"elements", e.size()}};
        result.report["frame_potential"] = to_string(fp);
        result.report["haar_frame_potential"] = haar.get_str();
        result.report["relation"] = equal ? "equal" : (fp > Rational(haar) ? "greater" : "less");
        result.exit_code = equal ? kExitPass : kExitNegative;
    } else if (cmd == "witness-not-4-design" || cmd == "witness-qudit-3") {
        Ensemble e = ensemble_for(c);
        TwirlWitness w = cmd == "witness-not-4-design" ? witness_not_4_design(e) : witness_qudit_not_3_design(e);
        result.report = base_report(cmd, e.params(), w.k, c.ensemble);
        const bool negative = w.verdict != "inconclusive";
        result.report["pass"] = !negative;
        result.report["verdict"] = w.verdict;
        result.report["witnesses"] = ojson::array({witness_to_json(e.params(), w)});
        result.exit_code = negative ? kExitNegative : kExitPass;
    } else if (cmd == "decompose-w") {
        if (c.perm.empty()) {
            throw ParameterError("decompose-w needs --perm");
        }
        SystemParams params = require_params(c);
        Permutation pi = Permutation::parse(c.perm, c.k.value_or(0));
        SparseOperator w = w_pauli_decomposition(pi, params);
        result.report = base_report(cmd, params, pi.k(), "");
        result.report["perm"] = pi.str();
        result.report["terms"] = w.size();
        std::int64_t dense = 1;
        bool fits = true;
        for (int i = 0; i < pi.k() && fits; ++i) {
            dense *= params.dim();
            fits = dense <= kDenseCap;
        }
        if (fits) {
            result.report["dense_agrees"] = w == w_pauli_decomposition_dense(pi, params);
        }
        result.report["pass"] = !fits || result.report["dense_agrees"].get<bool>();
        result.report["operator"] = to_json(w);
        result.exit_code = result.report["pass"].get<bool>() ? kExitPass : kExitNegative;
    } else if (cmd == "group-census") {
        SystemParams params = require_params(c);
        CensusReport r = clifford_census(params);
        result.report = census_report_to_json(r);
        result.exit_code = r.pass ? kExitPass : kExitNegative;
    } else {
        throw ParameterError("unknown command \"" + cmd + "\"");
    }
    if (c.timing) {
        result.report["kernel"] = kernels::isa_name(kernels::active_isa());
    }
    result.report["elapsed_ms"] = elapsed_since(start, c.timing);
    return result;
}

}  // namespace

ojson tensor_to_json(const SystemParams &params, const PauliTensor &t) {
    ojson factors = ojson::array();
    for (const auto &c : t.components) {
        factors.push_back(to_string(c));
    }
    (void)params;
    return {{"s", t.s}, {"factors", factors}};
}

ojson witness_to_json(const SystemParams &params, const TwirlWitness &w) {
    ojson j;
    j["k"] = w.k;
    j["input"] = tensor_to_json(params, w.input);
    j["probe"] = tensor_to_json(params, w.probe);
    j["probe_kind"] = w.probe_kind;
    j["psi"] = w.psi.str();
    j["haar"] = w.haar.str();
    j["verdict"] = w.verdict;
    ojson details = ojson::object();
    for (const auto &[name, value] : w.details) {
        details[name] = value.str();
    }
    j["details"] = details;
    return j;
}

ojson design_report_to_json(const DesignReport &r, bool timing) {
    ojson j;
    j["check"] = "verify-design";
    j["params"] = params_json(r.params, r.k);
    j["pass"] = r.pass();
    ojson cases = ojson::object();
    for (const auto &[name, tally] : r.cases) {
        cases[name] = {{"checked", tally.checked}, {"mismatches", tally.mismatches}};
    }
    j["counts"] = {{"mode", r.mode == SweepMode::Exhaustive ? "exhaustive" : "random"},
                   {"basis_size", r.basis_size},
                   {"checked", r.checked},
                   {"mismatches", r.mismatches},
                   {"cases", cases}};
    ojson witnesses = ojson::array();
    for (const auto &w : r.witnesses) {
        witnesses.push_back(witness_to_json(r.params, w));
    }
    j["witnesses"] = witnesses;
    j["elapsed_ms"] = timing ? static_cast<std::int64_t>(r.elapsed_ms) : 0;
    return j;
}

ojson mixing_report_to_json(const SystemParams &params, const MixingReport &r) {
    ojson j;
    j["kind"] = r.kind;
    j["pass"] = r.pass;
    ojson classes = ojson::array();
    for (const auto &c : r.classes) {
        ojson cj;
        cj["class"] = c.name;
        cj["orbit_size"] = c.orbit_size.get_str();
        cj["sources"] = c.sources;
        cj["expected"] = c.skipped ? "" : to_string(c.expected);
        cj["skipped"] = c.skipped;
        cj["pass"] = c.pass;
        if (!c.note.empty()) {
            cj["note"] = c.note;
        }
        classes.push_back(cj);
    }
    j["counts"] = {{"classes", classes}};
    if (r.first_deviation) {
        ojson p = ojson::array();
        ojson q = ojson::array();
        for (const auto &l : r.first_deviation->p) {
            p.push_back(to_string(l));
        }
        for (const auto &s : r.first_deviation->q) {
            q.push_back(to_string(s));
        }
        j["first_deviation"] = {{"p", p},
                                {"q", q},
                                {"observed", to_string(r.first_deviation->observed)},
                                {"expected", to_string(r.first_deviation->expected)}};
    }
    if (r.pauli_invariant) {
        j["pauli_invariant"] = *r.pauli_invariant;
    }
    (void)params;
    return j;
}

ojson census_report_to_json(const CensusReport &r) {
    ojson j;
    j["check"] = "group-census";
    j["params"] = params_json(r.params, std::nullopt);
    j["pass"] = r.pass;
    ojson classes = ojson::array();
    for (const auto &c : r.classes) {
        classes.push_back({{"F", c.l},
                           {"pairs", c.pairs},
                           {"stabilizer", c.stabilizer.get_str()},
                           {"orbit_formula", c.orbit_formula.get_str()},
                           {"orbit_observed", c.orbit_observed.get_str()},
                           {"identity_holds", c.identity_holds}});
    }
    j["counts"] = {{"order", r.order_enumerated.get_str()},
                   {"order_formula", r.order_formula.get_str()},
                   {"classes", classes}};
    return j;
}

RunResult run(const RunConfig &config) {
    try {
        return run_command(config);
    } catch (const std::exception &e) {
        RunResult r;
        r.exit_code = kExitError;
        r.error = e.what();
        r.report = {{"check", config.command}, {"error", r.error}};
        return r;
    }
}

int run_and_write(const RunConfig &config) {
    RunResult r = run(config);
    if (r.exit_code == kExitError) {
        std::cerr << "twirl-lab: error: " << r.error << "\n";
        return r.exit_code;
    }
    const std::string text = r.report.dump(2) + "\n";
    if (config.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(config.out);
        if (!out || !(out << text)) {
            std::cerr << "twirl-lab: error: cannot write report to \"" << config.out << "\"\n";
            return kExitError;
        }
    }
    return r.exit_code;
}

}  // namespace twirl
