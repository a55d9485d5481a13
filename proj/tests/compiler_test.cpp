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
#include <numbers>
#include <random>

#include "json.hpp"
#include "pbp/compiler.hpp"
#include "pbp/frontend.hpp"

namespace pbp {
namespace {

Program program_file(const std::string& name) {
  return load_program_file(std::string(PBP_PROGRAMS_DIR) + "/" + name + ".pbp");
}

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Amp> v(std::size_t{1} << n);
  double norm = 0;
  for (auto& a : v) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return StateVector(n, std::move(v));
}

// Largest deviation between the compiled circuit and the interpreter over
// random states and every basis state; also checks the ancillas end clean.
double deviation(const Program& p, int n, const CompileOutput& out, int trials = 10) {
  std::mt19937_64 rng(0xC0FFEE + n);
  std::vector<StateVector> inputs;
  for (int t = 0; t < trials; ++t) inputs.push_back(random_state(n, rng));
  if (n <= 8) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) inputs.push_back(StateVector::basis(n, x));
  }
  const Simulation sim = simulate(out.circuit, inputs);
  EXPECT_LT(sim.ancilla_mass, 1e-18);
  double worst = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const RunResult r = run_program(p, inputs[i]);
    EXPECT_EQ(r.outcome, Outcome::Done);
    worst = std::max(worst, sim.outputs[i].max_abs_diff(r.state));
  }
  return worst;
}

bool valid_size(const std::string& name, int n) { return name != "add" || n % 3 == 1; }

TEST(Compile, SingleGate) {
  const CompileOutput out = compile(load_program(":: qs[1] *= NOT;"), 1);
  EXPECT_EQ(out.circuit.gates.size(), 1u);
  EXPECT_EQ(out.circuit.total_wires(), 1);
  EXPECT_EQ(out.stats.size, 2);
}

TEST(Compile, SoundOnCorpusWithMerge) {
  for (const char* name : {"pairs", "qft", "add", "sum3", "chained1", "rec"}) {
    const Program p = program_file(name);
    for (int n = 1; n <= 8; ++n) {
      if (!valid_size(name, n)) continue;
      const CompileOutput out = compile(p, n);
      EXPECT_LT(deviation(p, n, out), 1e-9) << name << " n=" << n;
      EXPECT_EQ(out.stats.permutation_blocks, 0);
    }
  }
}

TEST(Compile, SoundOnCorpusWithBaseline) {
  for (const char* name : {"pairs", "qft", "add", "sum3", "chained1", "rec"}) {
    const Program p = program_file(name);
    for (int n = 1; n <= 7; ++n) {
      if (!valid_size(name, n)) continue;
      const CompileOutput out = compile_baseline(p, n);
      EXPECT_EQ(out.circuit.ancillas, 0);
      EXPECT_LT(deviation(p, n, out), 1e-9) << name << " n=" << n;
      EXPECT_EQ(count_baseline(p, n).gates, out.circuit.gates.size()) << name << " n=" << n;
    }
  }
}

TEST(Compile, QftMatchesHandBuiltCircuitAndDft) {
  const int n = 4;
  const CompileOutput out = compile(program_file("qft"), n);

  // H, then phases 2pi/2^k controlled by wire k, then a cyclic shift by
  // swaps, repeated on the first m wires for m = n..1.
  Circuit hand;
  hand.wires = n;
  auto cnot = [&](int c, int t) { hand.gates.push_back(make_gate(GateName::Not, 0, t, {{c, 1}})); };
  for (int m = n; m >= 1; --m) {
    hand.gates.push_back(make_gate(GateName::H, 0, 1));
    for (int k = m; k >= 2; --k) {
      hand.gates.push_back(make_gate(GateName::Ph, 2 * std::numbers::pi / std::pow(2.0, k), 1, {{k, 1}}));
    }
    for (int k = m; k >= 2; --k) {
      cnot(1, k);
      cnot(k, 1);
      cnot(1, k);
    }
  }

  const std::size_t dim = std::size_t{1} << n;
  std::vector<StateVector> basis;
  for (std::size_t x = 0; x < dim; ++x) basis.push_back(StateVector::basis(n, x));
  const Simulation sim = simulate(out.circuit, basis);
  const Simulation ref = simulate(hand, basis);
  for (std::size_t k = 0; k < dim; ++k) {
    EXPECT_LT(sim.outputs[k].max_abs_diff(ref.outputs[k]), 1e-9);
    for (std::size_t j = 0; j < dim; ++j) {
      const Amp dft = std::polar(1.0 / std::sqrt(double(dim)), 2 * std::numbers::pi * double(j * k) / double(dim));
      EXPECT_LT(std::abs(sim.outputs[k][j] - dft), 1e-9);
    }
  }
}

TEST(Compile, PairsAnchorsAndMerges) {
  const CompileOutput out = compile(program_file("pairs"), 6);
  EXPECT_EQ(out.stats.ancilla_count, 2);
  EXPECT_EQ(out.stats.anchor_events, 2);
  EXPECT_EQ(out.stats.merge_events, 2);
  ASSERT_EQ(out.circuit.anchors.size(), 2u);
  EXPECT_EQ(out.circuit.anchors[0], (Anchor{7, "pairs", 4}));
  EXPECT_EQ(out.circuit.anchors[1], (Anchor{8, "pairs", 2}));
}

TEST(Compile, RecAnchorsThenMerges) {
  const int n = 7;
  const CompileOutput out = compile(program_file("rec"), n);
  ASSERT_GE(out.circuit.anchors.size(), 2u);
  EXPECT_EQ(out.circuit.anchors[0], (Anchor{n + 1, "rec", n - 1}));
  EXPECT_EQ(out.circuit.anchors[1], (Anchor{n + 2, "rec", n - 2}));
  // The size n-2 call reached through the first anchored body merges.
  EXPECT_GE(out.stats.merge_events, 1);
  // One ancilla per size from n-1 down to 3 (smaller sizes hit the base case
  // without calls).
  EXPECT_EQ(out.stats.ancilla_count, n - 1 - 2 + 1 + 1);
}

TEST(Compile, SingleRecursiveCallHasNoMerges) {
  const CompileOutput add = compile(program_file("add"), 10);
  EXPECT_EQ(add.stats.merge_events, 0);
  EXPECT_EQ(add.stats.ancilla_count, 3);  // sizes 7, 4 and 1
  std::set<int> sizes;
  for (const auto& a : add.circuit.anchors) EXPECT_TRUE(sizes.insert(a.size).second);
}

TEST(Compile, SwapOnBasicProgramEqualsMerge) {
  for (const char* name : {"pairs", "qft", "sum3", "rec"}) {
    const Program p = program_file(name);
    CompileOptions swap;
    swap.strategy = Strategy::Swap;
    const CompileOutput a = compile(p, 7);
    const CompileOutput b = compile(p, 7, swap);
    EXPECT_EQ(serialize(a.circuit), serialize(b.circuit)) << name;
    EXPECT_EQ(b.stats.permutation_blocks, 0);
  }
}

const char* kShifted =
    "decl f(qs) {"
    "  if |qs| > 2 then"
    "    qs[2] *= RY^{pi/3};"
    "    qcase qs[1] of { 0 -> call f(qs - [1, 2]); 1 -> call f(qs - [1, -1]); }"
    "  else qs[1] *= H;"
    "}"
    ":: call f(qs);";

TEST(Compile, SwapRoutesDifferentPointerLists) {
  const Program p = load_program(kShifted);
  EXPECT_THROW(compile(p, 6), CompileError);
  CompileOptions swap;
  swap.strategy = Strategy::Swap;
  for (int n = 1; n <= 9; ++n) {
    const CompileOutput out = compile(p, n, swap);
    EXPECT_LT(deviation(p, n, out), 1e-9) << n;
    if (n >= 5) EXPECT_GT(out.stats.permutation_blocks, 0);
  }
}

TEST(Compile, SwapOnRecIsSound) {
  CompileOptions swap;
  swap.strategy = Strategy::Swap;
  const Program p = program_file("rec");
  for (int n = 1; n <= 10; ++n) EXPECT_LT(deviation(p, n, compile(p, n, swap), 4), 1e-9) << n;
}

TEST(Compile, Errors) {
  EXPECT_THROW(compile(load_program(":: qs[3] *= NOT;"), 2), CompileError);
  EXPECT_NO_THROW(compile(load_program(":: qs[3] *= NOT;"), 3));
  // Two recursive calls in sequence: rejected by classification.
  const Program wide = load_program(
      "decl f(qs) { if |qs| > 1 then call f(qs - [1]); call f(qs - [1]); else skip; } :: call f(qs);");
  try {
    compile(wide, 4);
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_NE(std::string(e.what()).find("WIDTH"), std::string::npos);
  }
  EXPECT_NO_THROW(compile_baseline(wide, 4));
  EXPECT_THROW(compile(load_program("decl p(qs) { call p(qs); } :: call p(qs);"), 2), CompileError);
  EXPECT_THROW(compile_baseline(program_file("pairs"), 31, 1000), CompileError);
}

TEST(Compile, OrthogonalityChecksRun) {
  const CompileOutput out = compile(program_file("sum3"), 8);
  EXPECT_GT(out.stats.orthogonality_checks, 0);
  CompileOptions off;
  off.check_orthogonality = false;
  const CompileOutput unchecked = compile(program_file("sum3"), 8, off);
  EXPECT_EQ(unchecked.stats.orthogonality_checks, 0);
  EXPECT_EQ(serialize(unchecked.circuit), serialize(out.circuit));
}

TEST(Compile, Deterministic) {
  const Program p = program_file("chained1");
  EXPECT_EQ(serialize(compile(p, 9).circuit), serialize(compile(p, 9).circuit));
}

TEST(Compile, StatsJson) {
  const CompileOutput out = compile(program_file("pairs"), 6);
  const auto j = nlohmann::json::parse(out.stats_json());
  EXPECT_EQ(j["size"], out.stats.size);
  EXPECT_EQ(j["ancillas"], 2);
  EXPECT_EQ(j["merges"], 2);
  EXPECT_EQ(j["strategy"], "merge");
  EXPECT_EQ(out.stats.size, circuit_size(out.circuit));
}

TEST(Baseline, CallFreeProgramMatchesMerge) {
  const Program p = load_program(":: qs[1] *= H; if |qs| > 2 then qs[3] *= RY^{pi/4}; else skip; qs[2] *= NOT;");
  EXPECT_EQ(compile_baseline(p, 3).circuit, compile(p, 3).circuit);
}

TEST(Baseline, PairsCountClosedForm) {
  const Program p = program_file("pairs");
  for (int n = 1; n <= 40; ++n) {
    const BaselineCount c = count_baseline(p, n);
    const boost::multiprecision::cpp_int expected =
        n % 2 == 1 ? boost::multiprecision::cpp_int(1) << ((n - 1) / 2) : boost::multiprecision::cpp_int(0);
    EXPECT_EQ(c.gates, expected) << n;
    EXPECT_EQ(c.size, expected + n);
  }
}

TEST(SeqDecompose, Examples) {
  const Program p = load_program(
      "decl p(qs) { skip; } :: skip; qs[1] *= NOT; qcase qs[1] of { 0 -> qs[2] *= H; 1 -> call p(qs - [1]); }");
  const PointerList l{1, 2};
  const auto& body = p.body.as<Seq>()->body;
  EXPECT_TRUE(seq_decompose({}, body[0], l).empty());

  const auto whole = seq_decompose({}, p.body, l);
  ASSERT_EQ(whole.size(), 3u);
  EXPECT_EQ(whole[0].stmt, &body[1]);

  const auto q = seq_decompose({{5, 1}}, body[2], l);
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q[0].controls, (ControlStructure{{1, 0}, {5, 1}}));
  EXPECT_TRUE(q[0].stmt->is<Unitary>());
  EXPECT_EQ(q[1].controls, (ControlStructure{{1, 1}, {5, 1}}));
  EXPECT_TRUE(q[1].stmt->is<Call>());
  EXPECT_EQ(q[1].pointers, l);
}

TEST(ProcedureSplit, Examples) {
  const Program qft = program_file("qft");
  const PointerList l{1, 2, 3};
  const auto entries = seq_decompose({}, qft.decl("qft").body, l);
  const ProcedureSplit split = procedure_split(qft, entries);
  ASSERT_EQ(split.plain.size(), 1u);
  EXPECT_TRUE(split.plain[0].stmt->is<Unitary>());
  ASSERT_EQ(split.families.size(), 3u);

  std::vector<ControlledStatement> calls{entries[1], entries[2]};
  const ProcedureSplit two = procedure_split(qft, calls);
  EXPECT_TRUE(two.plain.empty());
  ASSERT_EQ(two.families.size(), 2u);
  EXPECT_NE(two.families[0].first, two.families[1].first);

  const Program pairs = program_file("pairs");
  const auto one = procedure_split(pairs, seq_decompose({}, pairs.body, {1, 2, 3}));
  EXPECT_TRUE(one.plain.empty());
  EXPECT_EQ(one.families.size(), 1u);

  const Program plain = load_program(":: qs[1] *= NOT; qs[2] *= H;");
  const auto none = procedure_split(plain, seq_decompose({}, plain.body, {1, 2}));
  EXPECT_EQ(none.plain.size(), 2u);
  EXPECT_TRUE(none.families.empty());
}

}  // namespace
}  // namespace pbp
