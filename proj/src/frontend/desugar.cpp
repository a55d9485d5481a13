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

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "pbp/frontend.hpp"

namespace pbp {

namespace {

std::string at(SourcePos pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": ";
}

SetExpr desugar_set(const SetExpr& s);

IntExpr desugar_int(const IntExpr& e) {
  switch (e.kind) {
    case IntExpr::Kind::Literal:
      return e;
    case IntExpr::Kind::Offset:
      return IntExpr::offset(desugar_int(*e.base), e.value);
    case IntExpr::Kind::Size:
      return IntExpr::size(desugar_set(*e.set));
  }
  return e;
}

// Index `-n` into `s` becomes `|s| - n + 1`.
IntExpr resolve_index(const IntExpr& e, const SetExpr& s) {
  if (e.kind == IntExpr::Kind::Literal && e.value < 0) {
    return IntExpr::offset(IntExpr::offset(IntExpr::size(s), e.value), 1);
  }
  return desugar_int(e);
}

// A group `s - [i1, ..., ik]` names positions of `s`. Removing from the
// highest position down keeps the remaining indices valid: negative literals
// first (-1 before -2), then non-literal indices in source order, then
// positive literals in descending order.
SetExpr desugar_set(const SetExpr& s) {
  SetExpr out;
  for (const auto& group : s.removals) {
    std::vector<std::tuple<int, std::int64_t, IntExpr>> keyed;
    for (std::size_t k = 0; k < group.size(); ++k) {
      const IntExpr& e = group[k];
      int rank = 1;
      std::int64_t key = static_cast<std::int64_t>(k);
      if (e.kind == IntExpr::Kind::Literal) {
        rank = e.value < 0 ? 0 : 2;
        key = -e.value;
      }
      keyed.emplace_back(rank, key, resolve_index(e, out));
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
      return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
    });
    for (auto& item : keyed) out = out.remove(std::move(std::get<2>(item)));
  }
  return out;
}

QubitExpr single_qubit(const QubitExpr& q, std::size_t k) {
  QubitExpr out;
  out.set = desugar_set(q.set);
  out.indices.push_back(resolve_index(q.indices.at(k), out.set));
  return out;
}

QubitExpr only_qubit(const QubitExpr& q, SourcePos pos) {
  if (q.indices.size() != 1) {
    throw DesugarError(at(pos) + "a qubit expression with several indices is only allowed as a qcase control");
  }
  return single_qubit(q, 0);
}

Stmt not_gate(QubitExpr target) {
  Unitary u;
  u.target = std::move(target);
  u.gate = GateName::Not;
  return Stmt{std::move(u)};
}

Stmt controlled(QubitExpr control, Stmt body) {
  QCase q;
  q.controls.push_back(std::move(control));
  q.branches.emplace_back("0", Stmt{Skip{}});
  q.branches.emplace_back("1", std::move(body));
  return Stmt{std::move(q)};
}

Stmt cnot(const QubitExpr& a, const QubitExpr& b) { return controlled(a, not_gate(b)); }

void desugar_into(const Stmt& s, std::vector<Stmt>& out);

Stmt desugar_stmt(const Stmt& s) {
  std::vector<Stmt> body;
  desugar_into(s, body);
  return make_seq(std::move(body));
}

Stmt expand_macro(const MacroCall& m) {
  std::vector<QubitExpr> q;
  for (const auto& x : m.qubits) q.push_back(only_qubit(x, m.pos));
  const std::size_t want = m.name == "TOF" ? 3 : 2;
  if (q.size() != want || (m.name == "CPHASE") != m.int_arg.has_value()) {
    throw DesugarError(at(m.pos) + "wrong number of arguments to " + m.name);
  }
  if (m.name == "CNOT") return cnot(q[0], q[1]);
  if (m.name == "TOF") return controlled(q[0], cnot(q[1], q[2]));
  if (m.name == "SWAP") {
    return Stmt{Seq{{cnot(q[0], q[1]), cnot(q[1], q[0]), cnot(q[0], q[1])}}};
  }
  if (m.name == "CPHASE") {
    Unitary u;
    u.target = q[1];
    u.gate = GateName::Ph;
    u.phase = PhaseFn{PhaseFn::Kind::Dyadic, 1, -1};
    u.arg = desugar_int(*m.int_arg);
    u.pos = m.pos;
    return controlled(q[0], Stmt{std::move(u)});
  }
  throw DesugarError(at(m.pos) + "unknown macro " + m.name);
}

Stmt expand_qcase(const QCase& c) {
  std::vector<QubitExpr> controls;
  for (const auto& q : c.controls) {
    for (std::size_t k = 0; k < q.indices.size(); ++k) controls.push_back(single_qubit(q, k));
  }
  const std::size_t k = controls.size();
  if (k == 0 || k > 20) throw DesugarError("qcase must have between 1 and 20 control qubits");
  std::map<std::string, const Stmt*> by_label;
  for (const auto& [label, body] : c.branches) {
    const bool binary = std::all_of(label.begin(), label.end(), [](char ch) { return ch == '0' || ch == '1'; });
    if (label.size() != k || !binary) {
      throw DesugarError("qcase label '" + label + "' is not a " + std::to_string(k) + "-bit string");
    }
    if (!by_label.emplace(label, &body).second) {
      throw DesugarError("duplicate qcase label '" + label + "'");
    }
  }
  std::string prefix;
  std::function<Stmt(std::size_t)> build = [&](std::size_t level) -> Stmt {
    if (level == k) {
      auto it = by_label.find(prefix);
      if (it == by_label.end()) throw DesugarError("qcase is missing the branch labelled '" + prefix + "'");
      return desugar_stmt(*it->second);
    }
    QCase q;
    q.controls.push_back(controls[level]);
    for (const char bit : {'0', '1'}) {
      prefix.push_back(bit);
      q.branches.emplace_back(std::string(1, bit), build(level + 1));
      prefix.pop_back();
    }
    return Stmt{std::move(q)};
  };
  return build(0);
}

void desugar_into(const Stmt& s, std::vector<Stmt>& out) {
  if (s.is<Skip>()) {
    out.push_back(s);
  } else if (const auto* u = s.as<Unitary>()) {
    Unitary v = *u;
    v.target = only_qubit(u->target, u->pos);
    if (u->arg) v.arg = desugar_int(*u->arg);
    out.push_back(Stmt{std::move(v)});
  } else if (const auto* q = s.as<Seq>()) {
    for (const auto& x : q->body) desugar_into(x, out);
  } else if (const auto* i = s.as<If>()) {
    If v;
    v.cond = i->cond;
    v.then_branch = desugar_stmt(*i->then_branch);
    v.else_branch = desugar_stmt(*i->else_branch);
    // Conditions only hold integer expressions; rewrite their sets too.
    std::function<BoolExpr(const BoolExpr&)> fix = [&](const BoolExpr& b) -> BoolExpr {
      switch (b.kind) {
        case BoolExpr::Kind::Cmp:
          return BoolExpr::compare(b.op, desugar_int(*b.lhs), desugar_int(*b.rhs));
        case BoolExpr::Kind::And:
          return BoolExpr::conj(fix(*b.left), fix(*b.right));
        case BoolExpr::Kind::Or:
          return BoolExpr::disj(fix(*b.left), fix(*b.right));
        case BoolExpr::Kind::Not:
          return BoolExpr::negate(fix(*b.left));
      }
      return b;
    };
    v.cond = fix(i->cond);
    out.push_back(Stmt{std::move(v)});
  } else if (const auto* c = s.as<QCase>()) {
    out.push_back(expand_qcase(*c));
  } else if (const auto* c = s.as<Call>()) {
    Call v = *c;
    v.arg = desugar_set(c->arg);
    out.push_back(Stmt{std::move(v)});
  } else if (const auto* m = s.as<MacroCall>()) {
    desugar_into(expand_macro(*m), out);
  }
}

}  // namespace

Program desugar(const Program& p) {
  Program out;
  for (const auto& d : p.decls) {
    Decl nd = d;
    nd.body = desugar_stmt(d.body);
    out.decls.push_back(std::move(nd));
  }
  out.body = desugar_stmt(p.body);
  return out;
}

}  // namespace pbp
