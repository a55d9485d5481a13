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

#include <string>
#include <string_view>

#include "pbp/ast.hpp"

namespace pbp {

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& message);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

/// Raised by desugar for malformed sugar (missing qcase labels, bad macro
/// arity, multi-qubit expressions outside a qcase).
class DesugarError : public Error {
 public:
  using Error::Error;
};

/// Parses `.pbp` source into a surface AST. Sugar is kept as written.
///
/// Grammar summary:
///   program := [decl {"," decl} [","]] "::" stmt*
///   decl    := "decl" name "(" "qs" ")" "{" stmt* "}"
///   stmt    := "skip;" | qubit "*=" gate ";" | "call" name "(" set ");"
///            | "if" bool "then" stmt* "else" stmt
///            | "qcase" qubit {"," qubit} "of" "{" {label "->" stmt*} "}"
///            | MACRO "(" args ")" [";"] | "{" stmt* "}"
///   gate    := NOT | H | RY | PH, optionally "^{a*pi/b}" or
///              "^{a*pi/2^(x+c)}", then an optional "(" int ")"
Program parse_program(std::string_view source);

/// Expands macros, multi-qubit qcases, negative indices and multi-index
/// removals. The result contains only core statements.
Program desugar(const Program& p);

/// Deterministic surface syntax; `parse_program(pretty_print(p)) == p`.
std::string pretty_print(const Program& p);
std::string pretty_print(const Stmt& s);
std::string pretty_print(const IntExpr& e);
std::string pretty_print(const SetExpr& e);
std::string pretty_print(const BoolExpr& e);

/// parse_program followed by desugar.
Program load_program(std::string_view source);
Program load_program_file(const std::string& path);

}  // namespace pbp
