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

#include "pbp/eval.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>


namespace pbp {

std::int64_t eval_int(const IntExpr& e, const PointerList& l) {
  switch (e.kind) {
    case IntExpr::Kind::Literal:
      return e.value;
    case IntExpr::Kind::Offset:
      return eval_int(*e.base, l) + e.value;
    case IntExpr::Kind::Size:
      return static_cast<std::int64_t>(eval_set(*e.set, l).size());
  }
  return 0;
}

bool eval_bool(const BoolExpr& e, const PointerList& l) {
  switch (e.kind) {
    case BoolExpr::Kind::Cmp: {
      const std::int64_t a = eval_int(*e.lhs, l);
      const std::int64_t b = eval_int(*e.rhs, l);
      switch (e.op) {
        case CmpOp::Ge:
          return a >= b;
        case CmpOp::Gt:
          return a > b;
        case CmpOp::Eq:
          return a == b;
        case CmpOp::Le:
          return a <= b;
        case CmpOp::Lt:
          return a < b;
      }
      return false;
    }
    case BoolExpr::Kind::And:
      return eval_bool(*e.left, l) && eval_bool(*e.right, l);
    case BoolExpr::Kind::Or:
      return eval_bool(*e.left, l) || eval_bool(*e.right, l);
    case BoolExpr::Kind::Not:
      return !eval_bool(*e.left, l);
  }
  return false;
}

PointerList eval_set(const SetExpr& s, const PointerList& l) {
  PointerList out = l;
  for (const auto& group : s.removals) {
    if (group.size() != 1) throw Error("set expression is not desugared");
    const std::int64_t k = eval_int(group.front(), l);
    if (k < 1 || k > static_cast<std::int64_t>(out.size())) return {};
    out.erase(out.begin() + (k - 1));
  }
  return out;
}

int eval_qubit(const QubitExpr& q, const PointerList& l) {
  if (q.indices.size() != 1) throw Error("qubit expression is not desugared");
  const PointerList s = eval_set(q.set, l);
  const std::int64_t k = eval_int(q.indices.front(), l);
  if (k < 1 || k > static_cast<std::int64_t>(s.size())) return 0;
  return s[static_cast<std::size_t>(k - 1)];
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Done:
      return "done";
    case Outcome::Error:
      return "error";
    case Outcome::Diverged:
      return "diverged";
  }
  return "?";
}

Configuration Configuration::initial(StateVector state) {
  Configuration c;
  const int n = state.num_qubits();
  c.accessible = n >= 64 ? ~WireMask{0} : ((WireMask{1} << n) - 1);
  c.pointers.resize(static_cast<std::size_t>(n));
  for (int w = 1; w <= n; ++w) c.pointers[static_cast<std::size_t>(w - 1)] = w;
  c.state = std::move(state);
  return c;
}

namespace {

ExecResult worst(ExecResult a, ExecResult b) {
  // Diverged dominates Error dominates Done.
  ExecResult r;
  r.outcome = std::max(a.outcome, b.outcome);
  r.time = std::max(a.time, b.time);
  return r;
}

template <typename State>
class Machine {
 public:
  Machine(const Program& p, State& state, const ExecOptions& opts)
      : prog_(p), state_(state), opts_(opts), n_(state.num_qubits()) {
    if (n_ > 62) throw Error("the interpreter supports at most 62 qubits");
    depth_limit_ = opts.max_depth;
    // Along one path the pointer list and the accessible set never grow, and
    // each can shrink at most n times. Between shrinks only the procedure
    // changes, so a path with no repeated frame has at most P*(2n+1) nested
    // calls. A deeper path repeats a frame and can never terminate.
    if (opts.detect_cycles) {
      const std::int64_t bound = static_cast<std::int64_t>(p.decls.size()) * (2 * n_ + 1);
      depth_limit_ = std::min(depth_limit_, bound);
    }
  }

  ExecResult exec(const Stmt& s, const PointerList& l, WireMask acc, WireMask cmask, WireMask cval,
                  std::int64_t depth) {
    if (s.is<Skip>()) return {};
    if (const auto* u = s.as<Unitary>()) {
      const int w = eval_qubit(u->target, l);
      if (!accessible(w, acc)) return {Outcome::Error, 0};
      const std::int64_t k = u->arg ? eval_int(*u->arg, l) : 0;
      const double theta = u->phase ? u->phase->evaluate(k) : 0.0;
      state_.apply(bit(w), gate_matrix(u->gate, theta), cmask, cval);
      return {};
    }
    if (const auto* q = s.as<Seq>()) {
      ExecResult total;
      for (const auto& x : q->body) {
        const ExecResult r = exec(x, l, acc, cmask, cval, depth);
        total.time += r.time;
        if (r.outcome != Outcome::Done) {
          total.outcome = r.outcome;
          return total;
        }
      }
      return total;
    }
    if (const auto* i = s.as<If>()) {
      const Stmt& branch = eval_bool(i->cond, l) ? *i->then_branch : *i->else_branch;
      return exec(branch, l, acc, cmask, cval, depth);
    }
    if (const auto* c = s.as<QCase>()) {
      const int w = eval_qubit(c->control(), l);
      if (!accessible(w, acc)) return {Outcome::Error, 0};
      const WireMask b = WireMask{1} << bit(w);
      const ExecResult r0 = exec(c->branch(0), l, acc & ~b, cmask | b, cval, depth);
      const ExecResult r1 = exec(c->branch(1), l, acc & ~b, cmask | b, cval | b, depth);
      return worst(r0, r1);
    }
    if (const auto* c = s.as<Call>()) {
      const PointerList callee = eval_set(c->arg, l);
      if (callee.empty()) return {Outcome::Done, 1};
      if (depth + 1 > depth_limit_) return {Outcome::Diverged, 1};
      const int idx = prog_.find(c->proc);
      if (idx < 0) throw Error("undeclared procedure '" + c->proc + "'");
      ExecResult r = exec(prog_.decls[static_cast<std::size_t>(idx)].body, callee, acc, cmask, cval, depth + 1);
      r.time += 1;
      return r;
    }
    throw Error("statement is not desugared");
  }

 private:
  int bit(int w) const { return n_ - w; }
  bool accessible(int w, WireMask acc) const {
    return w >= 1 && w <= n_ && (acc >> bit(w) & 1U);
  }

  const Program& prog_;
  State& state_;
  const ExecOptions& opts_;
  int n_;
  std::int64_t depth_limit_;
};

PointerList identity_list(int n) {
  PointerList l(static_cast<std::size_t>(n));
  for (int w = 1; w <= n; ++w) l[static_cast<std::size_t>(w - 1)] = w;
  return l;
}

WireMask full_mask(int n) { return n >= 64 ? ~WireMask{0} : ((WireMask{1} << n) - 1); }

template <typename State>
ExecResult run_machine(const Program& p, const Stmt& s, State& state, const PointerList& l, WireMask acc,
                       const ExecOptions& opts) {
  ExecResult r;
  run_with_large_stack([&] {
    Machine<State> m(p, state, opts);
    r = m.exec(s, l, acc, 0, 0, 0);
  });
  return r;
}

// State-free walk over canonical frames: pointers [1..k] and the accessible
// positions among them.
class Walker {
 public:
  explicit Walker(const Program& p) : prog_(p) {}

  StaticResult call(int proc, int k) {
    std::string acc(static_cast<std::size_t>(k) + 1, 1);
    acc[0] = 0;
    return enter(proc, std::move(acc));
  }

  StaticResult stmt(const Stmt& s, const PointerList& l, std::string& acc) {
    if (s.is<Skip>()) return {};
    if (const auto* u = s.as<Unitary>()) {
      const int w = eval_qubit(u->target, l);
      if (w == 0 || !acc[static_cast<std::size_t>(w)]) return {Outcome::Error, 0};
      return {};
    }
    if (const auto* q = s.as<Seq>()) {
      StaticResult total;
      for (const auto& x : q->body) {
        const StaticResult r = stmt(x, l, acc);
        total.time += r.time;
        if (r.outcome != Outcome::Done) {
          total.outcome = r.outcome;
          return total;
        }
      }
      return total;
    }
    if (const auto* i = s.as<If>()) {
      return stmt(eval_bool(i->cond, l) ? *i->then_branch : *i->else_branch, l, acc);
    }
    if (const auto* c = s.as<QCase>()) {
      const int w = eval_qubit(c->control(), l);
      if (w == 0 || !acc[static_cast<std::size_t>(w)]) return {Outcome::Error, 0};
      acc[static_cast<std::size_t>(w)] = 0;
      const StaticResult r0 = stmt(c->branch(0), l, acc);
      const StaticResult r1 = stmt(c->branch(1), l, acc);
      acc[static_cast<std::size_t>(w)] = 1;
      return {std::max(r0.outcome, r1.outcome), std::max(r0.time, r1.time)};
    }
    if (const auto* c = s.as<Call>()) {
      const PointerList callee = eval_set(c->arg, l);
      if (callee.empty()) return {Outcome::Done, 1};
      std::string sub(callee.size() + 1, 0);
      for (std::size_t j = 0; j < callee.size(); ++j) sub[j + 1] = acc[static_cast<std::size_t>(callee[j])];
      StaticResult r = enter(prog_.find(c->proc), std::move(sub));
      r.time += 1;
      return r;
    }
    throw Error("statement is not desugared");
  }

 private:
  StaticResult enter(int proc, std::string acc) {
    if (proc < 0) throw Error("undeclared procedure");
    std::string key = std::to_string(proc) + ":" + acc;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!active_.insert(key).second) return {Outcome::Diverged, 0};
    const PointerList l = identity_list(static_cast<int>(acc.size()) - 1);
    const StaticResult r = stmt(prog_.decls[static_cast<std::size_t>(proc)].body, l, acc);
    active_.erase(key);
    memo_.emplace(std::move(key), r);
    return r;
  }

  const Program& prog_;
  std::unordered_map<std::string, StaticResult> memo_;
  std::unordered_set<std::string> active_;
};

}  // namespace

ExecResult exec_statement(const Stmt& s, Configuration& cfg, const Program& p, const ExecOptions& opts) {
  const StateVector saved = cfg.state;
  const ExecResult r = run_machine(p, s, cfg.state, cfg.pointers, cfg.accessible, opts);
  if (r.outcome != Outcome::Done) cfg.state = saved;
  return r;
}

RunResult run_program(const Program& p, const StateVector& input, const ExecOptions& opts) {
  RunResult out;
  out.state = input;
  const int n = input.num_qubits();
  const ExecResult r = run_machine(p, p.body, out.state, identity_list(n), full_mask(n), opts);
  out.outcome = r.outcome;
  out.time = r.time;
  if (r.outcome != Outcome::Done) out.state = input;
  return out;
}

SparseRunResult run_program(const Program& p, const SparseState& input, const ExecOptions& opts) {
  SparseRunResult out;
  out.state = input;
  const int n = input.num_qubits();
  const ExecResult r = run_machine(p, p.body, out.state, identity_list(n), full_mask(n), opts);
  out.outcome = r.outcome;
  out.time = r.time;
  if (r.outcome != Outcome::Done) out.state = input;
  return out;
}

StaticResult static_walk(const Program& p, int n) {
  StaticResult r;
  run_with_large_stack([&] {
    Walker w(p);
    std::string acc(static_cast<std::size_t>(n) + 1, 1);
    acc[0] = 0;
    r = w.stmt(p.body, identity_list(n), acc);
  });
  return r;
}

StaticResult static_walk_call(const Program& p, const std::string& proc, int n) {
  const int idx = p.find(proc);
  if (idx < 0) throw Error("undeclared procedure '" + proc + "'");
  if (n == 0) return {Outcome::Done, 1};
  StaticResult r;
  run_with_large_stack([&] {
    Walker w(p);
    r = w.call(idx, n);
    r.time += 1;
  });
  return r;
}

TimeReport time_complexity(const Program& p, int n, TimeMethod method, const ExecOptions& opts) {
  TimeReport rep;
  if (method == TimeMethod::Symbolic) {
    const StaticResult r = static_walk(p, n);
    rep.outcome = r.outcome;
    rep.time = r.time;
    return rep;
  }
  if (n > 20) throw Error("brute-force time complexity is limited to n <= 20");
  run_with_large_stack([&] {
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
      const SparseRunResult r = run_program(p, SparseState::basis(n, idx), opts);
      if (r.outcome != Outcome::Done) {
        rep.outcome = r.outcome;
        rep.time = r.time;
        rep.witness = static_cast<std::int64_t>(idx);
        return;
      }
      rep.time = std::max(rep.time, r.time);
    }
  });
  return rep;
}

}  // namespace pbp
