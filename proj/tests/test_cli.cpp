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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "twirl/cli.hpp"
#include "twirl/ensemble_io.hpp"

using namespace twirl;

namespace {

RunConfig config(const std::string &command, std::optional<int> n, std::optional<int> d, std::optional<int> k = {}) {
    RunConfig c;
    c.command = command;
    c.n = n;
    c.d = d;
    c.k = k;
    return c;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Cli, VerifyDesignExitMatrix) {
    struct Case {
        int n, d, k, exit;
    };
    for (Case c : std::vector<Case>{{1, 2, 1, 0}, {1, 2, 2, 0}, {1, 2, 3, 0}, {1, 2, 4, 1}, {2, 2, 1, 0}, {2, 2, 2, 0},
                                    {2, 2, 3, 0}, {2, 2, 4, 1}, {1, 3, 2, 0}, {1, 3, 3, 1}}) {
        RunResult r = run(config("verify-design", c.n, c.d, c.k));
        EXPECT_EQ(r.exit_code, c.exit) << c.n << "," << c.d << "," << c.k << " " << r.error;
        EXPECT_EQ(r.report["pass"].get<bool>(), c.exit == 0);
        EXPECT_EQ(r.report["witnesses"].empty(), c.exit == 0);
    }
}

TEST(Cli, ReportShape) {
    RunResult r = run(config("verify-design", 1, 2, 3));
    ASSERT_EQ(r.exit_code, 0);
    const auto &j = r.report;
    EXPECT_EQ(j["check"], "verify-design");
    EXPECT_EQ(j["params"]["n"], 1);
    EXPECT_EQ(j["params"]["k"], 3);
    EXPECT_EQ(j["counts"]["basis_size"], 64);
    EXPECT_EQ(j["elapsed_ms"], 0);
    EXPECT_FALSE(j.contains("kernel"));
    RunResult neg = run(config("verify-design", 1, 2, 4));
    const auto &w = neg.report["witnesses"][0];
    EXPECT_TRUE(w["psi"].is_string());
    EXPECT_TRUE(w["haar"].is_string());
    EXPECT_EQ(w["verdict"], "not-4-design");
}

TEST(Cli, OtherCommands) {
    EXPECT_EQ(run(config("check-mixing", 1, 2)).exit_code, 0);
    EXPECT_EQ(run(config("check-2mixing", 2, 2)).exit_code, 0);
    RunConfig pauli = config("check-2mixing", 1, 2);
    pauli.ensemble = "pauli-uniform";
    EXPECT_EQ(run(pauli).exit_code, 1);
    EXPECT_EQ(run(config("frame-potential", 1, 2, 3)).exit_code, 0);
    RunResult fp4 = run(config("frame-potential", 1, 2, 4));
    EXPECT_EQ(fp4.exit_code, 1);
    EXPECT_EQ(run(config("witness-not-4-design", 1, 2)).exit_code, 1);
    EXPECT_EQ(run(config("witness-qudit-3", 1, 3)).exit_code, 1);
    RunResult census = run(config("group-census", 1, 3));
    EXPECT_EQ(census.exit_code, 0);
    EXPECT_EQ(census.report["counts"]["order"], "216");
    RunConfig w = config("decompose-w", 1, 2);
    w.perm = "(1234)";
    RunResult dw = run(w);
    EXPECT_EQ(dw.exit_code, 0) << dw.error;
}

TEST(Cli, ErrorsExitTwo) {
    EXPECT_EQ(run(config("verify-design", 1, 2)).exit_code, 2);  // missing k
    EXPECT_EQ(run(config("no-such-command", 1, 2, 1)).exit_code, 2);
    EXPECT_EQ(run(config("witness-qudit-3", 1, 2)).exit_code, 2);
    RunResult cap = run(config("verify-design", 2, 2, 5));
    EXPECT_EQ(cap.exit_code, 2);
    EXPECT_NE(cap.error.find("1048576"), std::string::npos) << cap.error;
    RunConfig random = config("verify-design", 1, 2, 3);
    random.mode = "random";
    random.samples = 10;
    EXPECT_EQ(run(random).exit_code, 2);
    random.seed = 3;
    EXPECT_EQ(run(random).exit_code, 0);
    RunConfig missing = config("verify-design", 1, 2, 1);
    missing.ensemble = "/nonexistent/ensemble.json";
    EXPECT_EQ(run(missing).exit_code, 2);
}

TEST(Cli, MalformedFileReportsLocation) {
    auto path = std::filesystem::temp_directory_path() / "twirl_cli_bad.json";
    {
        std::ofstream(path) << "{\"n\": 1,\n \"d\": 2, \"entries\": [ }";
    }
    RunConfig c = config("check-mixing", std::nullopt, std::nullopt);
    c.ensemble = path.string();
    RunResult r = run(c);
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.error.find("at byte"), std::string::npos) << r.error;
    {
        nlohmann::json doc = ensemble_to_json(Ensemble::pauli_uniform(SystemParams(1, 2)));
        doc["entries"][0]["weight"] = "0.249";
        std::ofstream(path) << doc.dump();
    }
    r = run(c);
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.error.find("deficit 1/1000"), std::string::npos) << r.error;
    std::filesystem::remove(path);
}

TEST(Cli, ReportsAreByteIdentical) {
    auto dir = std::filesystem::temp_directory_path();
    for (int rep = 0; rep < 2; ++rep) {
        RunConfig c = config("verify-design", 1, 2, 4);
        c.mode = "random";
        c.samples = 50;
        c.seed = 17;
        c.out = (dir / ("twirl_cli_det_" + std::to_string(rep) + ".json")).string();
        EXPECT_EQ(run_and_write(c), 1);
    }
    std::string a = slurp(dir / "twirl_cli_det_0.json");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir / "twirl_cli_det_1.json"));
    RunConfig threaded = config("verify-design", 1, 2, 4);
    threaded.threads = 3;
    EXPECT_EQ(run(threaded).report.dump(), run(config("verify-design", 1, 2, 4)).report.dump());
    std::filesystem::remove(dir / "twirl_cli_det_0.json");
    std::filesystem::remove(dir / "twirl_cli_det_1.json");
}
