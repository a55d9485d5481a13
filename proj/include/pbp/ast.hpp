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
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pbp {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source location of a node. Ignored by AST equality so that a re-parsed
/// program compares equal to the original.
struct SourcePos {
  int line = 0;
  int col = 0;
  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

/// Heap-allocated value with deep copy and deep equality.
template <typename T>
class Box {
 public:
  Box() : ptr_(std::make_unique<T>()) {}
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  T& operator*() { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T* operator->() { return ptr_.get(); }
  const T* get() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

struct SetExpr;

/// Integer expression: a literal, `i + n` / `i - n`, or `|s|`.
struct IntExpr {
  enum class Kind { Literal, Offset, Size };

  Kind kind = Kind::Literal;
  // Literal value, or the signed constant added by Offset.
  std::int64_t value = 0;
  std::shared_ptr<const IntExpr> base;  // Offset
  std::shared_ptr<const SetExpr> set;   // Size

  static IntExpr literal(std::int64_t v);
  static IntExpr offset(IntExpr base, std::int64_t delta);
  static IntExpr size(SetExpr s);
};

/// Sorted-set expression: the formal parameter `qs` followed by removals.
/// Each group is one bracket `- [i, j, ...]`; desugared programs only use
/// singleton groups.
struct SetExpr {
  std::vector<std::vector<IntExpr>> removals;

  bool is_formal() const { return removals.empty(); }
  SetExpr remove(IntExpr index) const;
};

bool operator==(const IntExpr& a, const IntExpr& b);
bool operator==(const SetExpr& a, const SetExpr& b);

/// `s[i]`, or `s[i, j, ...]` as a qcase control list before desugaring.
struct QubitExpr {
  SetExpr set;
  std::vector<IntExpr> indices;
  friend bool operator==(const QubitExpr&, const QubitExpr&) = default;
};

enum class CmpOp { Ge, Gt, Eq, Le, Lt };

struct BoolExpr {
  enum class Kind { Cmp, And, Or, Not };

  Kind kind = Kind::Cmp;
  CmpOp op = CmpOp::Eq;
  std::optional<IntExpr> lhs, rhs;                         // Cmp
  std::shared_ptr<const BoolExpr> left, right;             // And/Or (left for Not)

  static BoolExpr compare(CmpOp op, IntExpr l, IntExpr r);
  static BoolExpr conj(BoolExpr l, BoolExpr r);
  static BoolExpr disj(BoolExpr l, BoolExpr r);
  static BoolExpr negate(BoolExpr e);
};

bool operator==(const BoolExpr& a, const BoolExpr& b);

enum class GateName { Not, H, Ry, Ph };

/// Angle function of a unitary application. Const denotes a*pi/b; Dyadic
/// denotes a*pi/2^(x+c) where x is the gate's integer argument.
struct PhaseFn {
  enum class Kind { Const, Dyadic };
  Kind kind = Kind::Const;
  std::int64_t a = 0;
  std::int64_t b = 1;  // denominator for Const, exponent offset c for Dyadic
  friend bool operator==(const PhaseFn&, const PhaseFn&) = default;

  /// Angle in [0, 2*pi).
  double evaluate(std::int64_t x) const;
};

struct Stmt;

struct Skip {
  friend bool operator==(const Skip&, const Skip&) = default;
};

struct Unitary {
  QubitExpr target;
  GateName gate = GateName::Not;
  std::optional<PhaseFn> phase;
  std::optional<IntExpr> arg;
  SourcePos pos;
  friend bool operator==(const Unitary&, const Unitary&) = default;
};

struct Seq {
  std::vector<Stmt> body;
  friend bool operator==(const Seq&, const Seq&) = default;
};

struct If {
  BoolExpr cond;
  Box<Stmt> then_branch;
  Box<Stmt> else_branch;
  friend bool operator==(const If&, const If&) = default;
};

/// Quantum case. Surface form allows several controls with one branch per
/// bitstring label; desugared form has one control and labels "0", "1".
struct QCase {
  std::vector<QubitExpr> controls;
  std::vector<std::pair<std::string, Stmt>> branches;
  friend bool operator==(const QCase&, const QCase&) = default;

  const Stmt& branch(int bit) const;
  const QubitExpr& control() const { return controls.front(); }
};

struct Call {
  std::string proc;
  SetExpr arg;
  SourcePos pos;
  friend bool operator==(const Call&, const Call&) = default;
};

/// CNOT, SWAP, TOF and CPHASE before expansion.
struct MacroCall {
  std::string name;
  std::vector<QubitExpr> qubits;
  std::optional<IntExpr> int_arg;
  SourcePos pos;
  friend bool operator==(const MacroCall&, const MacroCall&) = default;
};

struct Stmt {
  std::variant<Skip, Unitary, Seq, If, QCase, Call, MacroCall> node;
  friend bool operator==(const Stmt&, const Stmt&) = default;

  template <typename T>
  const T* as() const { return std::get_if<T>(&node); }
  template <typename T>
  bool is() const { return std::holds_alternative<T>(node); }
};

/// Builds a sequence, collapsing the empty and singleton cases.
Stmt make_seq(std::vector<Stmt> body);

struct Decl {
  std::string name;
  Stmt body;
  SourcePos pos;
  friend bool operator==(const Decl&, const Decl&) = default;
};

struct Program {
  std::vector<Decl> decls;
  Stmt body;
  friend bool operator==(const Program&, const Program&) = default;

  /// Index of the declaration, or -1.
  int find(std::string_view name) const;
  const Decl& decl(std::string_view name) const;
};

std::string_view gate_name(GateName g);

}  // namespace pbp
