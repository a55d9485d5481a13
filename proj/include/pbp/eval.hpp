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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pbp/ast.hpp"
#include "pbp/state.hpp"

namespace pbp {

/// Ordered list of distinct 1-based wire indices. The empty list doubles as
/// the error value of sorted-set expressions.
using PointerList = std::vector<int>;

std::int64_t eval_int(const IntExpr& e, const PointerList& l);
bool eval_bool(const BoolExpr& e, const PointerList& l);
/// Wire index of `s[i]`, or 0 when i is out of range.
int eval_qubit(const QubitExpr& q, const PointerList& l);
/// Pointer list of `s`, or [] when a removal is out of range.
PointerList eval_set(const SetExpr& s, const PointerList& l);

enum class Outcome { Done, Error, Diverged };
std::string_view outcome_name(Outcome o);

struct ExecOptions {
  /// Nested procedure calls allowed on one evaluation path.
  std::int64_t max_depth = 1'000'000;
  /// Also report divergence once the nesting exceeds P*(2n+1) for P
  /// procedures on n qubits. Such a path must repeat a (procedure, pointers,
  /// accessible set) frame, so it can never terminate.
  bool detect_cycles = true;
};

/// Accessible wires as a bitmask over state-index bits (wire w is bit n - w).
using WireMask = std::uint64_t;

struct Configuration {
  StateVector state;
  WireMask accessible = 0;
  PointerList pointers;

  /// (state, {1..n}, [1..n]).
  static Configuration initial(StateVector state);
};

struct ExecResult {
  Outcome outcome = Outcome::Done;
  std::int64_t time = 0;
};

/// Executes s from cfg. On success cfg.state holds the final state. On Error
/// or Diverged cfg.state is restored to its input.
ExecResult exec_statement(const Stmt& s, Configuration& cfg, const Program& p, const ExecOptions& opts = {});

struct RunResult {
  Outcome outcome = Outcome::Done;
  StateVector state;
  std::int64_t time = 0;
};

struct SparseRunResult {
  Outcome outcome = Outcome::Done;
  SparseState state;
  std::int64_t time = 0;
};

/// Runs the program body from the initial configuration.
RunResult run_program(const Program& p, const StateVector& input, const ExecOptions& opts = {});
SparseRunResult run_program(const Program& p, const SparseState& input, const ExecOptions& opts = {});

/// Result of a state-independent walk over the program's classical control.
struct StaticResult {
  Outcome outcome = Outcome::Done;
  std::int64_t time = 0;
};

/// Walks the program body on n qubits without a quantum state. Branching in
/// the language depends only on pointer lists and accessible sets, so this
/// gives the outcome and call count shared by every input of size n.
/// Memoized on (procedure, |l|, accessible positions of l).
StaticResult static_walk(const Program& p, int n);
/// Same for `call proc(qs)` on n qubits with all of them accessible.
StaticResult static_walk_call(const Program& p, const std::string& proc, int n);

enum class TimeMethod { Symbolic, BruteForce };

struct TimeReport {
  Outcome outcome = Outcome::Done;
  std::int64_t time = 0;
  /// Basis state of the first failing run for BruteForce, else -1.
  std::int64_t witness = -1;
};

/// Time_P(n). BruteForce maximizes over all 2^n basis-state runs (n <= 20);
/// Symbolic uses static_walk.
TimeReport time_complexity(const Program& p, int n, TimeMethod method = TimeMethod::Symbolic,
                           const ExecOptions& opts = {});

/// Runs fn on a thread with a large stack so that deep recursion in the
/// interpreter, walker and compiler does not overflow. Exceptions propagate.
void run_with_large_stack(const std::function<void()>& fn);

}  // namespace pbp
