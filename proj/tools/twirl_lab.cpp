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

#include <CLI11.hpp>

#include <map>
#include <string>

#include "twirl/cli.hpp"

int main(int argc, char **argv) {
    CLI::App app{"twirl-lab: exact unitary-design checks for Clifford ensembles"};
    app.require_subcommand(1);
    twirl::RunConfig config;
    int n = 0;
    int d = 0;
    int k = 0;
    std::uint64_t seed = 0;

    const std::map<std::string, std::string> descriptions{
        {"verify-design", "compare the ensemble twirl with the Haar twirl on every Pauli basis tensor"},
        {"check-mixing", "check that each nonidentity Pauli is sent uniformly over signed Paulis"},
        {"check-2mixing", "check that Pauli pairs are sent uniformly within their commutation class"},
        {"frame-potential", "exact frame potential against the Haar value"},
        {"witness-not-4-design", "qubit probe showing the ensemble is not a 4-design"},
        {"witness-qudit-3", "qudit probe showing the ensemble is not a 3-design"},
        {"decompose-w", "Pauli expansion of a permutation operator"},
        {"group-census", "enumerate the Clifford group and check the stabilizer counts"},
    };
    for (const char *name : twirl::kCommands) {
        CLI::App *sub = app.add_subcommand(name, descriptions.at(name));
        sub->add_option("--n", n, "number of qudits");
        sub->add_option("--d", d, "local dimension");
        sub->add_option("--k", k, "tensor power");
        sub->add_option("--ensemble", config.ensemble, "builtin name or ensemble file")
            ->default_str("clifford-uniform");
        sub->add_option("--mode", config.mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
        sub->add_option("--samples", config.samples, "random mode: basis tensors drawn");
        sub->add_option("--seed", seed, "random mode: RNG seed");
        sub->add_option("--out", config.out, "report path (default stdout)");
        sub->add_option("--witness-cap", config.witness_cap, "maximum witnesses reported");
        sub->add_option("--threads", config.threads, "worker threads");
        sub->add_option("--perm", config.perm, "permutation in cycle notation, e.g. (123)");
        sub->add_flag("--timing", config.timing, "record wall time and kernel in the report");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : twirl::kExitError;
    }
    CLI::App *sub = app.get_subcommands().front();
    config.command = sub->get_name();
    if (sub->count("--n")) {
        config.n = n;
    }
    if (sub->count("--d")) {
        config.d = d;
    }
    if (sub->count("--k")) {
        config.k = k;
    }
    if (sub->count("--seed")) {
        config.seed = seed;
    }
    return twirl::run_and_write(config);
}
