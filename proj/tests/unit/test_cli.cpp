// Copyright 2026 The qkdsim Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden.hpp"
#include "qkdsim/cli.hpp"
#include "qkdsim/json_format.hpp"

namespace qkd {
namespace {

namespace fs = std::filesystem;

const std::string kScenarios = std::string(QKDSIM_SOURCE_DIR) + "/scenarios/";

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "qkdsim_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

TEST(CliValidate, BundledScenariosPass) {
    for (const auto& entry : fs::directory_iterator(kScenarios)) {
        if (entry.path().extension() != ".json") continue;
        const auto r = cli({"validate", entry.path().string()});
        EXPECT_EQ(r.code, 0) << entry.path() << ": " << r.err;
    }
}

TEST(CliValidate, InvalidScenariosExitOneNamingTheField) {
    auto r = cli({"validate", kScenarios + "invalid/dimension_one.json"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("field 'd'"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;

    r = cli({"validate", kScenarios + "invalid/key_out_of_range.json"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("keys[1]"), std::string::npos) << r.err;

    for (const char* name : {"unknown_field.json", "touches_alice.json"}) {
        EXPECT_EQ(cli({"validate", kScenarios + "invalid/" + name}).code, 1) << name;
    }
}

TEST(CliValidate, MissingFileIsIoError) {
    EXPECT_EQ(cli({"validate", kScenarios + "does_not_exist.json"}).code, 3);
}

TEST(CliUsage, BadArgumentsExitOne) {
    EXPECT_EQ(cli({}).code, 1);
    EXPECT_EQ(cli({"launch"}).code, 1);
    EXPECT_EQ(cli({"run", kScenarios + "honest.json", "--format", "xml"}).code, 1);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(CliRun, DemoScenarioKeepsEveProductEveryRound) {
    const auto r = cli({"run", kScenarios + "demo_reply_odd.json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = Json::parse(r.out);
    EXPECT_EQ(report["d"], 3);
    ASSERT_EQ(report["transcripts"].size(), 4u);
    for (const auto& t : report["transcripts"]) {
        EXPECT_EQ(t["rank_e"], 1);
        EXPECT_EQ(t["key_decoded"], t["key_sent"]);
    }
    EXPECT_EQ(report["seed"], 20260117u);
}

TEST(CliRun, HonestTextTableDecodedEqualsSent) {
    const auto r = cli({"run", kScenarios + "honest.json", "--format", "text"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    EXPECT_EQ(line, "round  mode     sent  decoded  rank_e  entropy_k");
    int rows = 0;
    while (std::getline(lines, line) && line.rfind("control", 0) != 0) {
        std::istringstream fields(line);
        int round, sent, decoded;
        std::string mode;
        fields >> round >> mode >> sent >> decoded;
        EXPECT_EQ(sent, decoded) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 12);
}

TEST(CliRun, SeedFlagOverridesScenarioAndOutputIsDeterministic) {
    const auto path = scratch("run.json");
    ASSERT_EQ(cli({"run", kScenarios + "intercept_resend.json", "--seed", "5", "--out", path.string()}).code, 0);
    const auto first = slurp(path);
    ASSERT_EQ(cli({"run", kScenarios + "intercept_resend.json", "--seed", "5", "--out", path.string()}).code, 0);
    EXPECT_EQ(slurp(path), first);
    EXPECT_EQ(Json::parse(first)["seed"], 5u);
    EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST(CliRun, TemplateOnlyScenarioCannotRun) {
    EXPECT_EQ(cli({"run", kScenarios + "search_stage5_d2.json"}).code, 1);
}

TEST(CliRun, ToleranceFlagEnvAndDefault) {
    EXPECT_EQ(cli::resolve_tolerance("1e-6"), 1e-6);
    ::setenv("QKDSIM_TOL", "1e-7", 1);
    EXPECT_EQ(cli::resolve_tolerance(""), 1e-7);
    EXPECT_EQ(cli::resolve_tolerance("1e-5"), 1e-5);
    ::setenv("QKDSIM_TOL", "abc", 1);
    EXPECT_EQ(cli({"run", kScenarios + "honest.json"}).code, 1);
    ::unsetenv("QKDSIM_TOL");
    EXPECT_EQ(cli::resolve_tolerance(""), 1e-8);
    EXPECT_EQ(cli({"run", kScenarios + "honest.json", "--tol", "-1"}).code, 1);
    const auto r = cli({"run", kScenarios + "honest.json", "--tol", "1e-9"});
    EXPECT_EQ(Json::parse(r.out)["rank_tolerance"], 1e-9);
}

TEST(CliRun, UnwritableOutputIsIoError) {
    EXPECT_EQ(cli({"run", kScenarios + "honest.json", "--out", "/nonexistent_dir/x/report.json"}).code, 3);
}

TEST(CliSearch, StageFiveContainsReversal) {
    const auto r = cli({"search", kScenarios + "search_stage5_d2.json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = Json::parse(r.out);
    bool found = false;
    for (const auto& c : report["candidates"]) found = found || c["text"] == "cadd(k->e, s=1)";
    EXPECT_TRUE(found);
}

TEST(CliSearch, EvenRoundMatchesGolden) {
    const auto r = cli({"search", kScenarios + "search_even_round_d3.json"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(oracle::golden_path("post_round1_round2", 3));
    std::stringstream golden;
    golden << in.rdbuf();
    EXPECT_EQ(oracle::project_report(Json::parse(r.out)), Json::parse(golden.str()));
}

TEST(CliSearch, DepthFourExceedsCap) {
    const auto path = scratch("never.json");
    fs::remove(path);
    const auto r = cli({"search", kScenarios + "search_even_round_d3.json", "--depth", "4", "--out", path.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("DepthCapExceeded"), std::string::npos);
    EXPECT_FALSE(fs::exists(path));
}

TEST(CliSearch, ByteIdenticalAcrossRuns) {
    const auto a = cli({"search", kScenarios + "search_even_round_d3.json", "--depth", "3"});
    const auto b = cli({"search", kScenarios + "search_even_round_d3.json", "--depth", "3"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

}  // namespace
}  // namespace qkd
