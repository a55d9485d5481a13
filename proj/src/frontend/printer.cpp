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

#include <sstream>

#include "pbp/frontend.hpp"

namespace pbp {

namespace {

std::string qubit_text(const QubitExpr& q) {
  std::string out = pretty_print(q.set) + "[";
  for (std::size_t k = 0; k < q.indices.size(); ++k) {
    if (k > 0) out += ", ";
    out += pretty_print(q.indices[k]);
  }
  return out + "]";
}

std::string phase_text(const PhaseFn& f) {
  std::string out = std::to_string(f.a) + "*pi/";
  if (f.kind == PhaseFn::Kind::Const) return out + std::to_string(f.b);
  out += "2^(x";
  if (f.b > 0) out += "+" + std::to_string(f.b);
  if (f.b < 0) out += "-" + std::to_string(-f.b);
  return out + ")";
}

std::string_view cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Ge:
      return ">=";
    case CmpOp::Gt:
      return ">";
    case CmpOp::Eq:
      return "=";
    case CmpOp::Le:
      return "<=";
    case CmpOp::Lt:
      return "<";
  }
  return "?";
}

std::string paren(const BoolExpr& e, bool wrap) {
  return wrap ? "(" + pretty_print(e) + ")" : pretty_print(e);
}

class Printer {
 public:
  std::string str() const { return out_.str(); }

  // Prints the statements of a body without surrounding braces.
  void body(const Stmt& s, int indent) {
    if (const auto* q = s.as<Seq>()) {
      for (const auto& x : q->body) stmt(x, indent);
    } else {
      stmt(s, indent);
    }
  }

  void stmt(const Stmt& s, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (s.is<Skip>()) {
      out_ << pad << "skip;\n";
    } else if (const auto* u = s.as<Unitary>()) {
      out_ << pad << qubit_text(u->target) << " *= " << gate_name(u->gate);
      if (u->phase) out_ << "^{" << phase_text(*u->phase) << "}";
      if (u->arg) out_ << "(" << pretty_print(*u->arg) << ")";
      out_ << ";\n";
    } else if (const auto* q = s.as<Seq>()) {
      out_ << pad << "{\n";
      for (const auto& x : q->body) stmt(x, indent + 1);
      out_ << pad << "}\n";
    } else if (const auto* i = s.as<If>()) {
      out_ << pad << "if " << pretty_print(i->cond) << " then\n";
      body(*i->then_branch, indent + 1);
      out_ << pad << "else\n";
      stmt(*i->else_branch, indent + 1);
    } else if (const auto* c = s.as<QCase>()) {
      out_ << pad << "qcase ";
      for (std::size_t k = 0; k < c->controls.size(); ++k) {
        if (k > 0) out_ << ", ";
        out_ << qubit_text(c->controls[k]);
      }
      out_ << " of {\n";
      for (const auto& [label, b] : c->branches) {
        out_ << pad << "  " << label << " ->\n";
        body(b, indent + 2);
      }
      out_ << pad << "}\n";
    } else if (const auto* c = s.as<Call>()) {
      out_ << pad << "call " << c->proc << "(" << pretty_print(c->arg) << ");\n";
    } else if (const auto* m = s.as<MacroCall>()) {
      out_ << pad << m->name << "(";
      for (std::size_t k = 0; k < m->qubits.size(); ++k) {
        if (k > 0) out_ << ", ";
        out_ << qubit_text(m->qubits[k]);
      }
      if (m->int_arg) out_ << ", " << pretty_print(*m->int_arg);
      out_ << ");\n";
    }
  }

  std::ostringstream& out() { return out_; }

 private:
  std::ostringstream out_;
};

}  // namespace

std::string pretty_print(const IntExpr& e) {
  switch (e.kind) {
    case IntExpr::Kind::Literal:
      return std::to_string(e.value);
    case IntExpr::Kind::Offset:
      return pretty_print(*e.base) + (e.value < 0 ? " - " + std::to_string(-e.value)
                                                  : " + " + std::to_string(e.value));
    case IntExpr::Kind::Size:
      return "|" + pretty_print(*e.set) + "|";
  }
  return "?";
}

std::string pretty_print(const SetExpr& s) {
  std::string out = "qs";
  for (const auto& group : s.removals) {
    out += " - [";
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (k > 0) out += ", ";
      out += pretty_print(group[k]);
    }
    out += "]";
  }
  return out;
}

// And/Or parse left-associatively with && binding tighter than ||.
std::string pretty_print(const BoolExpr& e) {
  using K = BoolExpr::Kind;
  switch (e.kind) {
    case K::Cmp:
      return pretty_print(*e.lhs) + " " + std::string(cmp_text(e.op)) + " " + pretty_print(*e.rhs);
    case K::And:
      return paren(*e.left, e.left->kind == K::Or) + " && " +
             paren(*e.right, e.right->kind == K::Or || e.right->kind == K::And);
    case K::Or:
      return paren(*e.left, false) + " || " + paren(*e.right, e.right->kind == K::Or);
    case K::Not:
      return "!" + paren(*e.left, e.left->kind == K::And || e.left->kind == K::Or);
  }
  return "?";
}

std::string pretty_print(const Stmt& s) {
  Printer p;
  p.stmt(s, 0);
  return p.str();
}

std::string pretty_print(const Program& prog) {
  Printer p;
  for (std::size_t k = 0; k < prog.decls.size(); ++k) {
    const Decl& d = prog.decls[k];
    p.out() << "decl " << d.name << "(qs) {\n";
    p.body(d.body, 1);
    p.out() << "}" << (k + 1 < prog.decls.size() ? "," : "") << "\n";
  }
  p.out() << "::\n";
  p.body(prog.body, 1);
  return p.str();
}

}  // namespace pbp
