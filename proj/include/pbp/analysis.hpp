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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbp/ast.hpp"

namespace pbp {

/// Call relation between declared procedures, indexed in declaration order.
struct CallGraph {
  std::vector<std::string> procs;
  /// Distinct (caller, callee) pairs, sorted.
  std::vector<std::pair<int, int>> edges;
  /// reach[a][b]: a reaches b through one or more calls.
  std::vector<std::vector<bool>> reach;
  /// Strongly connected components of the recursive procedures, each sorted
  /// and listed in order of their first member.
  std::vector<std::vector<int>> families;
  /// Family index of each procedure, or -1 when it is not recursive.
  std::vector<int> family_of;

  int index(std::string_view name) const;
  bool reaches(int a, int b) const { return reach[a][b]; }
  bool recursive(int a) const { return reach[a][a]; }
  /// Mutual recursion: a and b reach each other.
  bool equivalent(int a, int b) const { return reach[a][b] && reach[b][a]; }
  /// a reaches b but b does not reach a.
  bool above(int a, int b) const { return reach[a][b] && !reach[b][a]; }
};

CallGraph build_call_graph(const Program& p);

/// Number of calls into the procedure's own family along one sequential path.
int width(const Program& p, const std::string& proc);
int rank(const Program& p, const std::string& proc);

struct ProcedureInfo {
  std::string name;
  int width = 0;
  int rank = 0;
  bool recursive = false;
  int family = -1;
};

/// A call occurrence; caller is empty for the program body.
struct CallSite {
  std::string caller;
  std::string callee;
  std::string argument;
};

struct ClassificationReport {
  std::vector<ProcedureInfo> procedures;
  bool wf = true;
  bool width_le_1 = true;
  bool basic = true;
  bool pbp = true;
  /// Distinct call arguments other than `qs`, in order of first occurrence.
  std::vector<std::string> call_arguments;
  /// The unique non-`qs` argument when the program is BASIC and has one.
  std::optional<std::string> basic_argument;
  /// Calls inside a recursion family whose argument removes nothing.
  std::vector<CallSite> wf_violations;
  std::vector<std::string> wide_procedures;

  std::string to_json() const;
  std::string to_table() const;
  /// 0 for PBP, 2 for WF and WIDTH<=1 only, 3 otherwise.
  int exit_code() const;
};

/// Syntactic classification of a desugared program.
ClassificationReport classify_program(const Program& p);

}  // namespace pbp
