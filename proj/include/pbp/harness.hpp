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
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pbp/ast.hpp"
#include "pbp/compiler.hpp"
#include "pbp/state.hpp"

namespace pbp {

class HarnessError : public Error {
 public:
  using Error::Error;
};

/// The interpreter reached an error or diverged.
class RunError : public HarnessError {
 public:
  using HarnessError::HarnessError;
};

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Source text of a built-in example. Ids: pairs, qft, rec, add, chained(k)
/// or chainedK, sum(r) or sumR, for k, r >= 1.
std::string builtin_source(std::string_view id);
/// The parsed and desugared built-in example.
Program builtin_example(std::string_view id);
/// Ids exercised by the test suites: pairs qft rec add sum2 sum3 chained1 chained2.
std::vector<std::string> builtin_ids();
/// False for sizes on which the example has no meaningful input layout
/// (add needs n = 3m + 1). True for every size of the other examples.
bool builtin_valid_size(std::string_view id, int n);

/// Strategies whose preconditions the program meets, in the order merge,
/// swap, sequential.
std::vector<Strategy> legal_strategies(const Program& p);

/// Unit vector of normally distributed complex amplitudes.
StateVector random_state(int n, std::mt19937_64& rng);
/// Parses a bitstring such as "0110" or a JSON array of [re, im] pairs.
/// With expected_n >= 0 the qubit count must match.
StateVector parse_state(std::string_view text, int expected_n = -1);
/// JSON array of [re, im] pairs with %.17g numbers.
std::string state_to_json(const StateVector& s);

struct VerifyOptions {
  Strategy strategy = Strategy::Merge;
  int trials = 20;
  double tol = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  /// Basis states are added when 2^n does not exceed this.
  int exhaustive_limit = 256;
};

struct VerifyReport {
  std::string program;
  Strategy strategy = Strategy::Merge;
  int n = 0;
  int trials = 0;
  int basis_states = 0;
  /// Max-norm distance to the interpreter output, including any amplitude
  /// left on nonzero ancilla patterns.
  double max_deviation = 0.0;
  double tol = 0.0;
  bool pass = false;
  CompileStats stats;

  std::string to_json() const;
};

/// Compiles p at n and compares the simulated circuit with the interpreter
/// on seeded random states plus every basis state for small n. Compile
/// errors propagate; an interpreter error or divergence throws RunError.
VerifyReport verify_equivalence(const Program& p, int n, const VerifyOptions& opts = {},
                                std::string_view program_id = "program");

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root mean square residual in log space.
  double residual = 0.0;
};

/// Least squares line through (log n, log size). Needs at least 3 points,
/// all positive, with at least two distinct n.
Fit fit_exponent(const std::vector<std::pair<double, double>>& points);

struct BenchRow {
  int n = 0;
  boost::multiprecision::cpp_int size;
  /// -1 when the row was counted rather than built.
  std::int64_t depth = -1;
  std::int64_t time = 0;
  std::int64_t ancillas = 0;
  bool counted = false;
  double seconds = 0.0;
};

struct BenchOptions {
  /// The sequential strategy builds circuits up to this many gates and
  /// counts them beyond.
  std::int64_t materialize_budget = 1'000'000;
  /// Always count for the sequential strategy.
  bool count_only = false;
  /// Worker threads; 0 means hardware concurrency.
  int threads = 0;
  /// Include wall-clock seconds in to_json and to_csv.
  bool timing = false;
};

struct BenchReport {
  std::string program;
  Strategy strategy = Strategy::Merge;
  std::vector<BenchRow> rows;
  /// Requested sizes that were erroneous or invalid for the program.
  std::vector<int> skipped;
  /// Fit over the top half of the rows (at least the last 3); NaN with
  /// fewer than 3 rows.
  Fit fit;
  bool timing = false;

  std::string to_csv() const;
  std::string to_json() const;
};

/// Compiles p at every size in ns (sorted and deduplicated). Sizes where the
/// program is erroneous, or invalid for the named built-in, are skipped.
BenchReport bench_scaling(const Program& p, Strategy strategy, std::vector<int> ns, const BenchOptions& opts = {},
                          std::string_view program_id = "program");

/// Parses "a:b:step", "a:b" or a single size.
std::vector<int> parse_range(std::string_view text);

/// Exit codes of the command line tool besides 0 (success), 1 (internal
/// error) and the check results 2 and 3.
inline constexpr int kExitInput = 4;
inline constexpr int kExitCompile = 5;
inline constexpr int kExitRun = 6;
inline constexpr int kExitVerify = 7;
inline constexpr int kExitUsage = 64;

/// The pbpc command line; args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbp
