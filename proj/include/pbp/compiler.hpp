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

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "pbp/ast.hpp"
#include "pbp/circuit.hpp"
#include "pbp/eval.hpp"

namespace pbp {

class CompileError : public Error {
 public:
  using Error::Error;
};

enum class Strategy { Merge, Sequential, Swap };
std::string_view strategy_name(Strategy s);
/// Parses "merge", "sequential" or "swap".
Strategy parse_strategy(std::string_view name);

struct CompileOptions {
  Strategy strategy = Strategy::Merge;
  /// Check with BDDs that every merge folds a control structure disjoint from
  /// the ancilla's current condition into it, and that the entries handed to
  /// each sub-optimization are pairwise disjoint.
  bool check_orthogonality = true;
  /// Gate limit for the sequential strategy.
  std::int64_t gate_budget = 10'000'000;
};

struct CompileStats {
  std::int64_t ancilla_count = 0;
  std::int64_t anchor_events = 0;
  std::int64_t merge_events = 0;
  /// Merges routed through a controlled permutation (swap strategy only).
  std::int64_t permutation_blocks = 0;
  /// Orthogonality checks performed.
  std::int64_t orthogonality_checks = 0;
  std::int64_t size = 0;
  std::int64_t depth = 0;
  std::int64_t lowered_size = 0;
};

struct CompileOutput {
  Circuit circuit;
  CompileStats stats;
  Strategy strategy = Strategy::Merge;

  /// {"size","depth","wires","ancillas","anchors","merges","lowered_size",...}.
  std::string stats_json() const;
};

/// Compiles the program body on n input wires. Merge and swap require a
/// program in WF and WIDTH<=1; sequential requires WF. Throws CompileError
/// when the program is erroneous or diverges at size n, on a strategy and
/// classification mismatch, and when an orthogonality check fails.
CompileOutput compile(const Program& p, int n, const CompileOptions& opts = {});

/// Same as compile with the sequential strategy: every call inlined and both
/// branches of every qcase emitted in sequence, with no ancillas.
CompileOutput compile_baseline(const Program& p, int n, std::int64_t gate_budget = 10'000'000);

struct BaselineCount {
  boost::multiprecision::cpp_int gates;
  int wires = 0;
  boost::multiprecision::cpp_int size;
};

/// Exact gate and size count of compile_baseline without building gates.
BaselineCount count_baseline(const Program& p, int n);

/// A statement awaiting compilation under controls. `stmt` points into the
/// program it was taken from.
struct ControlledStatement {
  ControlStructure controls;
  const Stmt* stmt = nullptr;
  PointerList pointers;
};

/// Flattens a statement into its atomic controlled statements (unitaries and
/// calls) in execution order, selecting If branches and extending controls
/// through qcase. Skip contributes nothing.
std::vector<ControlledStatement> seq_decompose(const ControlStructure& cs, const Stmt& s, const PointerList& l);

struct ProcedureSplit {
  /// Entries that call no recursive procedure.
  std::vector<ControlledStatement> plain;
  /// One group per recursion family that has entries, in family order.
  std::vector<std::pair<int, std::vector<ControlledStatement>>> families;
};

/// Partitions atomic entries by the recursion family of the procedure they
/// call. Family indices are those of build_call_graph(p).
ProcedureSplit procedure_split(const Program& p, const std::vector<ControlledStatement>& entries);

}  // namespace pbp
