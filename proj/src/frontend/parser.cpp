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

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "lexer.hpp"
#include "pbp/frontend.hpp"

namespace pbp {

ParseError::ParseError(int line, int col, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
      line_(line),
      col_(col) {}

namespace {

using detail::Tok;
using detail::Token;

bool is_macro(std::string_view name) {
  return name == "CNOT" || name == "SWAP" || name == "TOF" || name == "CPHASE";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program p;
    std::set<std::string> names;
    if (peek_ident("decl")) {
      for (;;) {
        const Token& at = peek();
        Decl d = decl();
        if (!names.insert(d.name).second) {
          throw ParseError(at.line, at.col, "duplicate declaration of '" + d.name + "'");
        }
        p.decls.push_back(std::move(d));
        if (!accept(",")) break;
        if (!peek_ident("decl")) break;
      }
    }
    expect("::");
    p.body = stmts([this] { return peek().kind == Tok::End; });
    check_calls(p);
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  bool peek_punct(std::string_view p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Punct && t.text == p;
  }
  bool peek_ident(std::string_view name, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Ident && t.text == name;
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(std::string_view p) {
    if (peek_punct(p)) {
      next();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, msg + ", found " + found);
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail("expected '" + std::string(p) + "'");
  }
  void expect_ident(std::string_view name) {
    if (!peek_ident(name)) fail("expected '" + std::string(name) + "'");
    next();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    return next().text;
  }
  std::int64_t integer() {
    if (peek().kind != Tok::Int) fail("expected integer");
    const Token t = next();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) throw ParseError(t.line, t.col, "integer literal out of range");
    return v;
  }
  std::int64_t signed_integer() {
    if (accept("-")) return -integer();
    return integer();
  }

  Decl decl() {
    Decl d;
    d.pos = {peek().line, peek().col};
    expect_ident("decl");
    d.name = ident();
    expect("(");
    expect_ident("qs");
    expect(")");
    expect("{");
    d.body = stmts([this] { return peek_punct("}"); });
    expect("}");
    return d;
  }

  Stmt stmts(const std::function<bool()>& stop) {
    std::vector<Stmt> body;
    while (!stop()) {
      if (peek().kind == Tok::End) fail("unexpected end of input");
      body.push_back(stmt());
    }
    return make_seq(std::move(body));
  }

  Stmt stmt() {
    const Token& t = peek();
    const SourcePos pos{t.line, t.col};
    if (accept("{")) {
      Stmt s = stmts([this] { return peek_punct("}"); });
      expect("}");
      return s;
    }
    if (peek_ident("skip")) {
      next();
      expect(";");
      return Stmt{Skip{}};
    }
    if (peek_ident("if")) {
      next();
      If s;
      s.cond = bool_or();
      expect_ident("then");
      s.then_branch = stmts([this] { return peek_ident("else"); });
      expect_ident("else");
      s.else_branch = stmt();
      return Stmt{std::move(s)};
    }
    if (peek_ident("qcase")) {
      next();
      QCase s;
      s.controls.push_back(qubit());
      while (accept(",")) s.controls.push_back(qubit());
      expect_ident("of");
      expect("{");
      while (!peek_punct("}")) {
        if (peek().kind != Tok::Int) fail("expected branch label");
        std::string label = next().text;
        expect("->");
        Stmt body = stmts([this] { return peek_punct("}") || peek().kind == Tok::Int; });
        s.branches.emplace_back(std::move(label), std::move(body));
      }
      expect("}");
      return Stmt{std::move(s)};
    }
    if (peek_ident("call")) {
      next();
      Call c;
      c.pos = pos;
      c.proc = ident();
      expect("(");
      c.arg = set();
      expect(")");
      expect(";");
      return Stmt{std::move(c)};
    }
    if (t.kind == Tok::Ident && is_macro(t.text) && peek_punct("(", 1)) {
      MacroCall m;
      m.pos = pos;
      m.name = next().text;
      expect("(");
      const std::size_t arity = m.name == "TOF" ? 3 : 2;
      for (std::size_t k = 0; k < arity; ++k) {
        if (k > 0) expect(",");
        m.qubits.push_back(qubit());
      }
      if (m.name == "CPHASE") {
        expect(",");
        m.int_arg = int_expr();
      }
      expect(")");
      accept(";");
      return Stmt{std::move(m)};
    }
    return unitary(pos);
  }

  Stmt unitary(SourcePos pos) {
    Unitary u;
    u.pos = pos;
    u.target = qubit();
    expect("*=");
    const Token g = peek();
    const std::string name = ident();
    if (name == "NOT") {
      u.gate = GateName::Not;
    } else if (name == "H") {
      u.gate = GateName::H;
    } else if (name == "RY") {
      u.gate = GateName::Ry;
    } else if (name == "PH") {
      u.gate = GateName::Ph;
    } else {
      throw ParseError(g.line, g.col, "unknown gate '" + name + "'");
    }
    if (accept("^")) {
      expect("{");
      u.phase = phase();
      expect("}");
    }
    if (accept("(")) {
      u.arg = int_expr();
      expect(")");
    }
    expect(";");
    const bool angled = u.gate == GateName::Ry || u.gate == GateName::Ph;
    if (angled && !u.phase) throw ParseError(g.line, g.col, "gate " + name + " requires an angle");
    if (!angled && u.phase) throw ParseError(g.line, g.col, "gate " + name + " takes no angle");
    if (u.phase && u.phase->kind == PhaseFn::Kind::Dyadic && !u.arg) {
      throw ParseError(g.line, g.col, "angle depends on x but no integer argument is given");
    }
    return Stmt{std::move(u)};
  }

  // [-][a*]pi[/b] or [-][a*]pi/2^(x+c)
  PhaseFn phase() {
    PhaseFn f;
    const bool neg = accept("-");
    f.a = 1;
    if (peek().kind == Tok::Int) {
      f.a = integer();
      expect("*");
    }
    if (neg) f.a = -f.a;
    expect_ident("pi");
    f.b = 1;
    if (!accept("/")) return f;
    const Token at = peek();
    const std::int64_t den = integer();
    if (!accept("^")) {
      if (den == 0) throw ParseError(at.line, at.col, "zero denominator");
      f.b = den;
      return f;
    }
    if (den != 2) throw ParseError(at.line, at.col, "only powers of 2 may depend on x");
    f.kind = PhaseFn::Kind::Dyadic;
    f.b = 0;
    const bool paren = accept("(");
    expect_ident("x");
    if (paren) {
      if (accept("+")) {
        f.b = integer();
      } else if (accept("-")) {
        f.b = -integer();
      }
      expect(")");
    }
    return f;
  }

  SetExpr set() {
    expect_ident("qs");
    SetExpr s;
    while (peek_punct("-") && peek_punct("[", 1)) {
      next();
      next();
      std::vector<IntExpr> group;
      group.push_back(int_expr());
      while (accept(",")) group.push_back(int_expr());
      expect("]");
      s.removals.push_back(std::move(group));
    }
    return s;
  }

  QubitExpr qubit() {
    QubitExpr q;
    q.set = set();
    expect("[");
    q.indices.push_back(int_expr());
    while (accept(",")) q.indices.push_back(int_expr());
    expect("]");
    return q;
  }

  IntExpr int_expr() {
    IntExpr e = int_primary();
    for (;;) {
      if (peek_punct("+") && peek(1).kind == Tok::Int) {
        next();
        e = IntExpr::offset(std::move(e), integer());
      } else if (peek_punct("-") && peek(1).kind == Tok::Int) {
        next();
        e = IntExpr::offset(std::move(e), -integer());
      } else {
        return e;
      }
    }
  }

  IntExpr int_primary() {
    if (accept("|")) {
      SetExpr s = set();
      expect("|");
      return IntExpr::size(std::move(s));
    }
    if (peek().kind == Tok::Int || (peek_punct("-") && peek(1).kind == Tok::Int)) {
      return IntExpr::literal(signed_integer());
    }
    fail("expected integer expression");
  }

  BoolExpr bool_or() {
    BoolExpr e = bool_and();
    while (accept("||")) e = BoolExpr::disj(std::move(e), bool_and());
    return e;
  }

  BoolExpr bool_and() {
    BoolExpr e = bool_unary();
    while (accept("&&")) e = BoolExpr::conj(std::move(e), bool_unary());
    return e;
  }

  BoolExpr bool_unary() {
    if (accept("!")) return BoolExpr::negate(bool_unary());
    if (accept("(")) {
      BoolExpr e = bool_or();
      expect(")");
      return e;
    }
    IntExpr l = int_expr();
    CmpOp op;
    if (accept(">=")) {
      op = CmpOp::Ge;
    } else if (accept(">")) {
      op = CmpOp::Gt;
    } else if (accept("=") || accept("==")) {
      op = CmpOp::Eq;
    } else if (accept("<=")) {
      op = CmpOp::Le;
    } else if (accept("<")) {
      op = CmpOp::Lt;
    } else {
      fail("expected comparison operator");
    }
    return BoolExpr::compare(op, std::move(l), int_expr());
  }

  void check_calls(const Program& p) const {
    std::function<void(const Stmt&)> walk = [&](const Stmt& s) {
      if (const auto* c = s.as<Call>()) {
        if (p.find(c->proc) < 0) {
          throw ParseError(c->pos.line, c->pos.col, "call to undeclared procedure '" + c->proc + "'");
        }
      } else if (const auto* q = s.as<Seq>()) {
        for (const auto& x : q->body) walk(x);
      } else if (const auto* i = s.as<If>()) {
        walk(*i->then_branch);
        walk(*i->else_branch);
      } else if (const auto* k = s.as<QCase>()) {
        for (const auto& [label, b] : k->branches) walk(b);
      }
    };
    for (const auto& d : p.decls) walk(d.body);
    walk(p.body);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view source) {
  Parser parser(detail::tokenize(source));
  return parser.program();
}

Program load_program(std::string_view source) { return desugar(parse_program(source)); }

Program load_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_program(ss.str());
}

}  // namespace pbp
