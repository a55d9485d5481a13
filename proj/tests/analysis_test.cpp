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

#include <set>

#include "json.hpp"
#include "pbp/analysis.hpp"
#include "pbp/frontend.hpp"

namespace pbp {
namespace {

Program program_file(const std::string& name) {
  return load_program_file(std::string(PBP_PROGRAMS_DIR) + "/" + name + ".pbp");
}

std::set<std::pair<std::string, std::string>> named_edges(const CallGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : g.edges) out.emplace(g.procs[a], g.procs[b]);
  return out;
}

using Edges = std::set<std::pair<std::string, std::string>>;

TEST(CallGraph, Qft) {
  const CallGraph g = build_call_graph(program_file("qft"));
  EXPECT_EQ(named_edges(g),
            (Edges{{"qft", "rot"}, {"qft", "shift"}, {"qft", "qft"}, {"rot", "rot"}, {"shift", "shift"}}));
  const int qft = g.index("qft");
  const int rot = g.index("rot");
  EXPECT_TRUE(g.above(qft, rot));
  EXPECT_FALSE(g.above(rot, qft));
  EXPECT_FALSE(g.above(qft, qft));
  EXPECT_EQ(g.families.size(), 3u);
}

TEST(CallGraph, NoCalls) {
  const CallGraph g = build_call_graph(load_program("decl f(qs) { skip; } :: skip;"));
  EXPECT_TRUE(g.edges.empty());
  EXPECT_TRUE(g.families.empty());
  EXPECT_EQ(g.family_of[0], -1);
}

TEST(CallGraph, Chained) {
  const CallGraph g = build_call_graph(program_file("chained1"));
  EXPECT_EQ(named_edges(g), (Edges{{"a1", "a1"},
                                   {"a1", "b1"},
                                   {"b1", "b1"},
                                   {"b1", "c1"},
                                   {"c1", "c1"},
                                   {"c1", "d1"},
                                   {"d1", "d1"},
                                   {"d1", "flip"}}));
}

TEST(CallGraph, MutualRecursionFormsOneFamily) {
  const CallGraph g = build_call_graph(load_program(
      "decl even(qs) { if |qs| > 0 then call odd(qs - [1]); else skip; },"
      "decl odd(qs) { if |qs| > 0 then call even(qs - [1]); else qs[1] *= NOT; },"
      "decl top(qs) { call even(qs); }"
      ":: call top(qs);"));
  ASSERT_EQ(g.families.size(), 1u);
  EXPECT_EQ(g.families[0], (std::vector<int>{0, 1}));
  EXPECT_TRUE(g.equivalent(0, 1));
  EXPECT_EQ(g.family_of[2], -1);
  EXPECT_TRUE(g.above(2, 0));
}

TEST(Width, Examples) {
  const Program qft = program_file("qft");
  EXPECT_EQ(width(qft, "qft"), 1);
  EXPECT_EQ(width(qft, "rot"), 1);
  EXPECT_EQ(width(qft, "shift"), 1);
  EXPECT_EQ(width(load_program("decl f(qs) { skip; } :: skip;"), "f"), 0);
  EXPECT_EQ(width(program_file("rec"), "rec"), 1);
}

TEST(Width, SequentialCallsAdd) {
  const Program p = load_program(
      "decl g(qs) { skip; },"
      "decl f(qs) { if |qs| > 1 then call f(qs - [1]); call g(qs); call f(qs - [1]); else skip; }"
      ":: call f(qs);");
  EXPECT_EQ(width(p, "f"), 2);
  EXPECT_EQ(width(p, "g"), 0);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(load_program("decl f(qs) { skip; } :: skip;"), "f"), 0);
  const Program qft = program_file("qft");
  EXPECT_EQ(rank(qft, "rot"), 1);
  EXPECT_EQ(rank(qft, "shift"), 1);
  EXPECT_EQ(rank(qft, "qft"), 2);
  EXPECT_EQ(rank(program_file("pairs"), "pairs"), 1);
  const Program chained = program_file("chained1");
  EXPECT_EQ(rank(chained, "flip"), 0);
  EXPECT_EQ(rank(chained, "d1"), 1);
  EXPECT_EQ(rank(chained, "a1"), 4);
}

TEST(Rank, NonRecursiveTakesMaxOfReachable) {
  const Program p = load_program(
      "decl r(qs) { call r(qs - [1]); },"
      "decl top(qs) { call r(qs); }"
      ":: call top(qs);");
  EXPECT_EQ(rank(p, "top"), 1);
}

TEST(Rank, Invariants) {
  for (const char* name : {"pairs", "qft", "rec", "add", "sum3", "chained1"}) {
    const Program p = program_file(name);
    const CallGraph g = build_call_graph(p);
    for (std::size_t a = 0; a < g.procs.size(); ++a) {
      const int ra = rank(p, g.procs[a]);
      EXPECT_EQ(ra >= 1, g.recursive(static_cast<int>(a))) << name << " " << g.procs[a];
      for (std::size_t b = 0; b < g.procs.size(); ++b) {
        if (g.above(static_cast<int>(a), static_cast<int>(b))) EXPECT_GE(ra, rank(p, g.procs[b]));
      }
    }
  }
}

TEST(Classify, Examples) {
  for (const char* name : {"pairs", "qft", "add", "sum3", "chained1"}) {
    const ClassificationReport r = classify_program(program_file(name));
    EXPECT_TRUE(r.pbp) << name;
    EXPECT_EQ(r.exit_code(), 0);
  }
  const ClassificationReport rec = classify_program(program_file("rec"));
  EXPECT_TRUE(rec.wf);
  EXPECT_TRUE(rec.width_le_1);
  EXPECT_FALSE(rec.basic);
  EXPECT_FALSE(rec.pbp);
  EXPECT_EQ(rec.exit_code(), 2);
  EXPECT_EQ(rec.call_arguments, (std::vector<std::string>{"qs - [1]", "qs - [2] - [1]"}));
}

TEST(Classify, BasicArgumentIsDesugared) {
  const ClassificationReport r = classify_program(program_file("pairs"));
  EXPECT_EQ(r.basic_argument, "qs - [2] - [1]");
  EXPECT_EQ(classify_program(program_file("qft")).basic_argument, "qs - [|qs| - 1 + 1]");
}

TEST(Classify, NotWellFounded) {
  const ClassificationReport r = classify_program(load_program("decl p(qs) { call p(qs); } :: call p(qs);"));
  EXPECT_FALSE(r.wf);
  ASSERT_EQ(r.wf_violations.size(), 1u);
  EXPECT_EQ(r.wf_violations[0].caller, "p");
  EXPECT_EQ(r.exit_code(), 3);
}

TEST(Classify, NonRecursiveCallOnFormalIsWellFounded) {
  const ClassificationReport r =
      classify_program(load_program("decl g(qs) { skip; }, decl f(qs) { call g(qs); } :: call f(qs);"));
  EXPECT_TRUE(r.pbp);
  EXPECT_FALSE(r.basic_argument.has_value());
}

TEST(Classify, TooWide) {
  const ClassificationReport r = classify_program(load_program(
      "decl f(qs) { if |qs| > 1 then call f(qs - [1]); call f(qs - [1]); else skip; } :: call f(qs);"));
  EXPECT_TRUE(r.wf);
  EXPECT_FALSE(r.width_le_1);
  EXPECT_EQ(r.wide_procedures, std::vector<std::string>{"f"});
  EXPECT_EQ(r.exit_code(), 3);
}

TEST(Classify, JsonAndTable) {
  const ClassificationReport r = classify_program(program_file("rec"));
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["pbp"], false);
  EXPECT_EQ(j["wf"], true);
  EXPECT_EQ(j["procedures"][0]["name"], "rec");
  EXPECT_EQ(j["procedures"][0]["rank"], 1);
  EXPECT_TRUE(j["basic_argument"].is_null());
  EXPECT_NE(r.to_table().find("PBP       no"), std::string::npos);
}

}  // namespace
}  // namespace pbp
