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

#include "pbp/ast.hpp"

#include <cmath>
#include <numbers>

namespace pbp {

IntExpr IntExpr::literal(std::int64_t v) {
  IntExpr e;
  e.kind = Kind::Literal;
  e.value = v;
  return e;
}

IntExpr IntExpr::offset(IntExpr base, std::int64_t delta) {
  IntExpr e;
  e.kind = Kind::Offset;
  e.value = delta;
  e.base = std::make_shared<const IntExpr>(std::move(base));
  return e;
}

IntExpr IntExpr::size(SetExpr s) {
  IntExpr e;
  e.kind = Kind::Size;
  e.set = std::make_shared<const SetExpr>(std::move(s));
  return e;
}

SetExpr SetExpr::remove(IntExpr index) const {
  SetExpr out = *this;
  out.removals.push_back({std::move(index)});
  return out;
}

bool operator==(const IntExpr& a, const IntExpr& b) {
  if (a.kind != b.kind || a.value != b.value) return false;
  switch (a.kind) {
    case IntExpr::Kind::Literal:
      return true;
    case IntExpr::Kind::Offset:
      return *a.base == *b.base;
    case IntExpr::Kind::Size:
      return *a.set == *b.set;
  }
  return false;
}

bool operator==(const SetExpr& a, const SetExpr& b) { return a.removals == b.removals; }

BoolExpr BoolExpr::compare(CmpOp op, IntExpr l, IntExpr r) {
  BoolExpr e;
  e.kind = Kind::Cmp;
  e.op = op;
  e.lhs = std::move(l);
  e.rhs = std::move(r);
  return e;
}

BoolExpr BoolExpr::conj(BoolExpr l, BoolExpr r) {
  BoolExpr e;
  e.kind = Kind::And;
  e.left = std::make_shared<const BoolExpr>(std::move(l));
  e.right = std::make_shared<const BoolExpr>(std::move(r));
  return e;
}

BoolExpr BoolExpr::disj(BoolExpr l, BoolExpr r) {
  BoolExpr e = conj(std::move(l), std::move(r));
  e.kind = Kind::Or;
  return e;
}

BoolExpr BoolExpr::negate(BoolExpr inner) {
  BoolExpr e;
  e.kind = Kind::Not;
  e.left = std::make_shared<const BoolExpr>(std::move(inner));
  return e;
}

bool operator==(const BoolExpr& a, const BoolExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case BoolExpr::Kind::Cmp:
      return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or:
      return *a.left == *b.left && *a.right == *b.right;
    case BoolExpr::Kind::Not:
      return *a.left == *b.left;
  }
  return false;
}

double PhaseFn::evaluate(std::int64_t x) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double angle = 0.0;
  if (kind == Kind::Const) {
    angle = static_cast<double>(a) * std::numbers::pi / static_cast<double>(b);
  } else {
    const std::int64_t exponent = x + b;
    angle = std::ldexp(static_cast<double>(a) * std::numbers::pi, static_cast<int>(-exponent));
  }
  angle = std::fmod(angle, two_pi);
  if (angle < 0) angle += two_pi;
  if (angle >= two_pi) angle = 0.0;
  return angle;
}

const Stmt& QCase::branch(int bit) const {
  const std::string label = bit == 0 ? "0" : "1";
  for (const auto& [l, s] : branches) {
    if (l == label) return s;
  }
  throw Error("qcase has no branch labelled " + label);
}

Stmt make_seq(std::vector<Stmt> body) {
  if (body.empty()) return Stmt{Skip{}};
  if (body.size() == 1) return std::move(body.front());
  return Stmt{Seq{std::move(body)}};
}

int Program::find(std::string_view name) const {
  for (std::size_t i = 0; i < decls.size(); ++i) {
    if (decls[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

const Decl& Program::decl(std::string_view name) const {
  const int i = find(name);
  if (i < 0) throw Error("undeclared procedure '" + std::string(name) + "'");
  return decls[static_cast<std::size_t>(i)];
}

std::string_view gate_name(GateName g) {
  switch (g) {
    case GateName::Not:
      return "NOT";
    case GateName::H:
      return "H";
    case GateName::Ry:
      return "RY";
    case GateName::Ph:
      return "PH";
  }
  return "?";
}

}  // namespace pbp
