// Copyright 2026 The pbp Authors
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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pbp/harness.hpp"

namespace pbp {
namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string program(const std::string& name) { return std::string(PBP_PROGRAMS_DIR) + "/" + name + ".pbp"; }

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(cli({"check", program("pairs")}).code, 0);
  EXPECT_EQ(cli({"check", program("rec")}).code, 2);
  EXPECT_EQ(cli({"check", "--builtin", "sum(2)"}).code, 0);
  const std::string path = ::testing::TempDir() + "wide.pbp";
  std::ofstream(path) << "decl f(qs) { call f(qs); } :: call f(qs);";
  EXPECT_EQ(cli({"check", path}).code, 3);
  const Result r = cli({"check", program("rec"), "--json"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["pbp"], false);
}

TEST(Cli, Verify) {
  const Result r = cli({"verify", program("pairs"), "--n", "6", "--trials", "20", "--tol", "1e-9"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 4), "PASS");
  const Result j = cli({"--seed", "5", "verify", "--builtin", "rec", "--n", "7", "--strategy", "swap", "--json"});
  EXPECT_EQ(j.code, 0) << j.err;
  EXPECT_EQ(nlohmann::json::parse(j.out)["program"], "rec");
  EXPECT_EQ(j.out, cli({"verify", "--builtin", "rec", "--n", "7", "--strategy", "swap", "--json", "--seed", "5"}).out);
}

TEST(Cli, Bench) {
  const Result r = cli({"bench", "--builtin", "qft", "--strategy", "merge", "--n", "8:128:8", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 16u);
  EXPECT_NEAR(j["slope"].get<double>(), 2.0, 0.15);
  EXPECT_EQ(r.out, cli({"bench", "--builtin", "qft", "--n", "8:128:8", "--json"}).out);
  const Result csv = cli({"bench", "--builtin", "pairs", "--strategy", "sequential", "--count", "--n", "5:9:2"});
  EXPECT_EQ(csv.out, "n,size,depth,time,ancillas\n5,9,,3,0\n7,15,,4,0\n9,25,,5,0\n");
}

TEST(Cli, CompileAndSimulate) {
  const std::string path = ::testing::TempDir() + "pairs3.json";
  Result r = cli({"compile", "--builtin", "pairs", "--n", "3", "--out", path, "--stats"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto stats = nlohmann::json::parse(r.out);
  for (const char* key : {"size", "depth", "wires", "ancillas", "anchors", "merges", "lowered_size"}) {
    EXPECT_TRUE(stats.contains(key)) << key;
  }
  r = cli({"simulate", path, "--state", "001", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto sim = nlohmann::json::parse(r.out);
  EXPECT_EQ(sim["state"][0][0], 1.0);
  EXPECT_EQ(sim["ancilla_mass"], 0.0);
  EXPECT_EQ(cli({"compile", "--builtin", "pairs", "--n", "2"}).out.substr(0, 10), "{\"wires\":2");
}

TEST(Cli, Run) {
  Result r = cli({"run", "--builtin", "pairs", "--state", "110", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["time"], 2);
  EXPECT_EQ(j["state"][7][0], 1.0);
  r = cli({"run", "--builtin", "pairs", "--n", "3"});
  EXPECT_NE(r.out.find("|001>"), std::string::npos);
  const std::string path = ::testing::TempDir() + "bad_index.pbp";
  std::ofstream(path) << ":: qs[3] *= NOT;";
  EXPECT_EQ(cli({"run", path, "--n", "2"}).code, kExitRun);
}

TEST(Cli, Errors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"compile", "--builtin", "pairs"}).code, kExitUsage);
  EXPECT_EQ(cli({"compile", "--builtin", "pairs", "--n", "3", "--strategy", "fast"}).code, kExitUsage);
  EXPECT_EQ(cli({"check"}).code, kExitUsage);
  EXPECT_EQ(cli({"check", program("pairs"), "--builtin", "qft"}).code, kExitUsage);
  EXPECT_EQ(cli({"check", "/nonexistent.pbp"}).code, kExitInput);
  EXPECT_EQ(cli({"check", "--builtin", "nope"}).code, kExitInput);
  EXPECT_EQ(cli({"run", "--builtin", "pairs", "--state", "01x"}).code, kExitInput);
  const std::string path = ::testing::TempDir() + "syntax.pbp";
  std::ofstream(path) << ":: qs[1] *= ;";
  EXPECT_EQ(cli({"check", path}).code, kExitInput);
  EXPECT_EQ(cli({"compile", "--builtin", "rec", "--n", "5", "--strategy", "merge"}).code, 0);
  const std::string wide = ::testing::TempDir() + "wide2.pbp";
  std::ofstream(wide) << "decl f(qs) { if |qs| > 1 then call f(qs - [1]); call f(qs - [1]); else skip; } :: call f(qs);";
  const Result r = cli({"compile", wide, "--n", "4"});
  EXPECT_EQ(r.code, kExitCompile);
  EXPECT_NE(r.err.find("WIDTH"), std::string::npos);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

}  // namespace
}  // namespace pbp
