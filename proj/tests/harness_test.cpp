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

#include <cmath>

#include "json.hpp"
#include "pbp/analysis.hpp"
#include "pbp/frontend.hpp"
#include "pbp/harness.hpp"

namespace pbp {
namespace {

Program program_file(const std::string& name) {
  return load_program_file(std::string(PBP_PROGRAMS_DIR) + "/" + name + ".pbp");
}

TEST(Builtin, MatchesShippedPrograms) {
  for (const char* name : {"pairs", "qft", "rec", "add", "sum3", "chained1"}) {
    EXPECT_EQ(builtin_example(name), program_file(name)) << name;
  }
}

TEST(Builtin, IdForms) {
  EXPECT_EQ(builtin_source("sum(3)"), builtin_source("sum3"));
  EXPECT_EQ(builtin_source("chained(2)"), builtin_source("chained2"));
  for (const char* bad : {"", "nope", "sum", "sum0", "sum(x)", "chained(0)", "chained-1", "sum(2"}) {
    EXPECT_THROW(builtin_source(bad), HarnessError) << bad;
  }
  for (const std::string& id : builtin_ids()) EXPECT_NO_THROW(builtin_example(id)) << id;
}

TEST(Builtin, ChainedFamiliesAndCrossEdge) {
  const Program p = builtin_example("chained(2)");
  const CallGraph g = build_call_graph(p);
  // Every procedure recurses only on itself, so each is its own family; the
  // a_i..d_i groups chain through d_i -> a_{i+1}.
  ASSERT_EQ(g.families.size(), 8u);
  const int d1 = g.index("d1"), a2 = g.index("a2");
  EXPECT_NE(g.family_of[d1], g.family_of[a2]);
  EXPECT_TRUE(std::count(g.edges.begin(), g.edges.end(), std::make_pair(d1, a2)) == 1);
  EXPECT_TRUE(g.above(d1, a2));
  EXPECT_TRUE(classify_program(p).pbp);
}

TEST(Builtin, Classification) {
  for (const char* id : {"pairs", "qft", "add", "sum(1)", "sum(2)", "sum(5)", "chained(1)", "chained(3)"}) {
    EXPECT_TRUE(classify_program(builtin_example(id)).pbp) << id;
  }
  const ClassificationReport rec = classify_program(builtin_example("rec"));
  EXPECT_TRUE(rec.wf && rec.width_le_1);
  EXPECT_FALSE(rec.basic);
  EXPECT_FALSE(rec.pbp);
}

TEST(Builtin, SumSemantics) {
  // sum(r) flips the last qubit iff exactly r of the first n - 1 are set.
  for (int r = 1; r <= 3; ++r) {
    const Program p = builtin_example("sum(" + std::to_string(r) + ")");
    const int n = 6;
    for (std::uint64_t x = 0; x < (1u << n); ++x) {
      const RunResult out = run_program(p, StateVector::basis(n, x));
      ASSERT_EQ(out.outcome, Outcome::Done);
      const bool flip = __builtin_popcountll(x >> 1) == r;
      EXPECT_NEAR(std::abs(out.state[flip ? x ^ 1 : x]), 1.0, 1e-12) << r << " " << x;
    }
  }
}

TEST(Builtin, ChainedSemantics) {
  // chained(k) flips the last qubit iff the others contain (0011)^k as a
  // subsequence.
  auto matches = [](std::uint64_t bits, int len, int k) {
    const std::string pattern = "0011";
    std::size_t matched = 0;
    for (int i = len - 1; i >= 0 && matched < 4u * k; --i) {
      if (((bits >> i) & 1) == static_cast<std::uint64_t>(pattern[matched % 4] - '0')) ++matched;
    }
    return matched == 4u * k;
  };
  for (int k = 1; k <= 2; ++k) {
    const Program p = builtin_example("chained" + std::to_string(k));
    const int n = 10;
    for (std::uint64_t x = 0; x < (1u << n); ++x) {
      const RunResult out = run_program(p, StateVector::basis(n, x));
      ASSERT_EQ(out.outcome, Outcome::Done);
      const bool flip = matches(x >> 1, n - 1, k);
      EXPECT_NEAR(std::abs(out.state[flip ? x ^ 1 : x]), 1.0, 1e-12) << k << " " << x;
    }
  }
}

TEST(Builtin, LegalStrategies) {
  EXPECT_EQ(legal_strategies(builtin_example("pairs")).size(), 3u);
  EXPECT_EQ(legal_strategies(builtin_example("rec")).size(), 3u);
  const Program wide = load_program("decl f(qs) { if |qs| > 1 then call f(qs - [1]); call f(qs - [1]); else skip; } :: call f(qs);");
  EXPECT_EQ(legal_strategies(wide), std::vector<Strategy>{Strategy::Sequential});
}

TEST(State, RandomIsSeededAndNormalized) {
  std::mt19937_64 a(kDefaultSeed), b(kDefaultSeed), c(1);
  const StateVector sa = random_state(5, a), sb = random_state(5, b), sc = random_state(5, c);
  EXPECT_NEAR(sa.norm(), 1.0, 1e-12);
  EXPECT_EQ(sa.max_abs_diff(sb), 0.0);
  EXPECT_GT(sa.max_abs_diff(sc), 0.0);
}

TEST(State, Parse) {
  EXPECT_EQ(parse_state("01").max_abs_diff(StateVector::basis(2, 1)), 0.0);
  const StateVector plus = parse_state("[[0.7071067811865476, 0], [0, 0.7071067811865476]]");
  EXPECT_EQ(plus.num_qubits(), 1);
  EXPECT_NEAR(plus[1].imag(), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(parse_state(state_to_json(plus)).max_abs_diff(plus), 0.0);
  EXPECT_THROW(parse_state("012"), HarnessError);
  EXPECT_THROW(parse_state("[[1,0],[0,0],[0,0]]"), HarnessError);
  EXPECT_THROW(parse_state("[[1,0],[1,0]]"), HarnessError);
  EXPECT_THROW(parse_state("[[1,0]"), HarnessError);
  EXPECT_THROW(parse_state("01", 3), HarnessError);
  EXPECT_THROW(parse_state(""), HarnessError);
}

TEST(Verify, TrivialProgram) {
  const VerifyReport r = verify_equivalence(load_program(":: skip;"), 3);
  EXPECT_EQ(r.max_deviation, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.basis_states, 8);
}

TEST(Verify, PairsAndQft) {
  VerifyOptions o;
  o.trials = 20;
  o.tol = 1e-9;
  EXPECT_TRUE(verify_equivalence(builtin_example("pairs"), 6, o, "pairs").pass);
  EXPECT_TRUE(verify_equivalence(builtin_example("qft"), 4, o, "qft").pass);
}

TEST(Verify, EveryBuiltinEveryLegalStrategy) {
  for (const std::string& id : builtin_ids()) {
    const Program p = builtin_example(id);
    for (Strategy s : legal_strategies(p)) {
      for (int n = 4; n <= 10; ++n) {
        if (!builtin_valid_size(id, n)) continue;
        VerifyOptions o;
        o.strategy = s;
        const VerifyReport r = verify_equivalence(p, n, o, id);
        EXPECT_TRUE(r.pass) << id << " " << strategy_name(s) << " n=" << n << " dev=" << r.max_deviation;
      }
    }
  }
}

TEST(Verify, DeterministicJson) {
  const Program p = builtin_example("rec");
  VerifyOptions o;
  o.seed = 7;
  EXPECT_EQ(verify_equivalence(p, 6, o, "rec").to_json(), verify_equivalence(p, 6, o, "rec").to_json());
  const auto j = nlohmann::json::parse(verify_equivalence(p, 6, o, "rec").to_json());
  EXPECT_EQ(j["program"], "rec");
  EXPECT_EQ(j["trials"], 20);
  EXPECT_EQ(j["pass"], true);
}

TEST(Fit, Exact) {
  std::vector<std::pair<double, double>> lin, quad;
  for (double n : {4.0, 8.0, 16.0, 32.0}) {
    lin.emplace_back(n, 5 * n);
    quad.emplace_back(n, 3 * n * n);
  }
  EXPECT_NEAR(fit_exponent(lin).slope, 1.0, 1e-12);
  EXPECT_NEAR(fit_exponent(lin).residual, 0.0, 1e-12);
  EXPECT_NEAR(fit_exponent(quad).slope, 2.0, 1e-12);
  EXPECT_NEAR(std::exp(fit_exponent(quad).intercept), 3.0, 1e-9);
}

TEST(Fit, Degenerate) {
  EXPECT_THROW(fit_exponent({{1, 1}, {2, 2}}), HarnessError);
  EXPECT_THROW(fit_exponent({{4, 1}, {4, 2}, {4, 3}}), HarnessError);
  EXPECT_THROW(fit_exponent({{1, 1}, {2, 0}, {3, 3}}), HarnessError);
}

TEST(Bench, Range) {
  EXPECT_EQ(parse_range("8:32:8"), (std::vector<int>{8, 16, 24, 32}));
  EXPECT_EQ(parse_range("3:5"), (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(parse_range("7"), (std::vector<int>{7}));
  for (const char* bad : {"", "a", "1:", "5:3", "0:4", "1:2:0", "1:2:3:4"}) {
    EXPECT_THROW(parse_range(bad), HarnessError) << bad;
  }
}

TEST(Bench, SkipsInvalidSizesAndIsDeterministic) {
  const Program p = builtin_example("add");
  BenchOptions o;
  o.threads = 2;
  const BenchReport a = bench_scaling(p, Strategy::Merge, parse_range("4:40"), o, "add");
  const BenchReport b = bench_scaling(p, Strategy::Merge, parse_range("4:40"), {}, "add");
  ASSERT_EQ(a.rows.size(), 13u);
  for (std::size_t i = 1; i < a.rows.size(); ++i) EXPECT_LT(a.rows[i - 1].n, a.rows[i].n);
  EXPECT_EQ(a.skipped.size(), 37u - 13u);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.to_csv(), b.to_csv());
  EXPECT_EQ(a.to_csv().substr(0, 26), "n,size,depth,time,ancillas");
  const auto j = nlohmann::json::parse(a.to_json());
  EXPECT_EQ(j["rows"].size(), 13u);
  EXPECT_NEAR(j["slope"].get<double>(), 1.0, 0.15);
}

TEST(Bench, ErroneousSizesSkipped) {
  // qs[3] does not exist below three qubits.
  const Program p = load_program(":: qs[3] *= NOT;");
  const BenchReport r = bench_scaling(p, Strategy::Merge, parse_range("1:6"));
  EXPECT_EQ(r.skipped, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.rows.size(), 4u);
}

TEST(Bench, SequentialCountsAboveBudget) {
  const Program p = builtin_example("pairs");
  BenchOptions o;
  o.materialize_budget = 100;
  const BenchReport r = bench_scaling(p, Strategy::Sequential, {9, 15, 21}, o, "pairs");
  EXPECT_FALSE(r.rows[0].counted);
  EXPECT_TRUE(r.rows[2].counted);
  EXPECT_EQ(r.rows[2].depth, -1);
  EXPECT_EQ(r.rows[2].size, 1024 + 21);
  EXPECT_EQ(r.rows[0].size, count_baseline(p, 9).size);
}

TEST(Bench, Slopes) {
  BenchOptions o;
  o.timing = true;
  EXPECT_NEAR(bench_scaling(builtin_example("qft"), Strategy::Merge, parse_range("8:64:8"), o).fit.slope, 2.0, 0.15);
  EXPECT_NEAR(bench_scaling(builtin_example("sum3"), Strategy::Merge, parse_range("8:64:8"), o).fit.slope, 1.0, 0.15);
  o.count_only = true;
  EXPECT_GE(bench_scaling(builtin_example("sum3"), Strategy::Sequential, parse_range("8:64:8"), o).fit.slope, 2.0);
}

}  // namespace
}  // namespace pbp
