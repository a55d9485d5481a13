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

#include "pbp/compiler.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "bdd.hpp"
#include "json.hpp"
#include "pbp/analysis.hpp"

namespace pbp {

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Merge:
      return "merge";
    case Strategy::Sequential:
      return "sequential";
    case Strategy::Swap:
      return "swap";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "merge") return Strategy::Merge;
  if (name == "sequential") return Strategy::Sequential;
  if (name == "swap") return Strategy::Swap;
  throw Error("unknown strategy '" + std::string(name) + "'");
}

std::string CompileOutput::stats_json() const {
  nlohmann::ordered_json j;
  j["strategy"] = std::string(strategy_name(strategy));
  j["size"] = stats.size;
  j["depth"] = stats.depth;
  j["wires"] = circuit.wires;
  j["ancillas"] = circuit.ancillas;
  j["gates"] = circuit.gates.size();
  j["anchors"] = stats.anchor_events;
  j["merges"] = stats.merge_events;
  j["permutation_blocks"] = stats.permutation_blocks;
  j["orthogonality_checks"] = stats.orthogonality_checks;
  j["lowered_size"] = stats.lowered_size;
  return j.dump();
}

namespace {

PointerList identity_list(int n) {
  PointerList l(static_cast<std::size_t>(n));
  for (int w = 1; w <= n; ++w) l[static_cast<std::size_t>(w - 1)] = w;
  return l;
}

void append_seq(const ControlStructure& cs, const Stmt& s, const PointerList& l,
                std::vector<ControlledStatement>& out) {
  if (s.is<Skip>()) return;
  if (s.is<Unitary>() || s.is<Call>()) {
    out.push_back({cs, &s, l});
  } else if (const auto* q = s.as<Seq>()) {
    for (const auto& x : q->body) append_seq(cs, x, l, out);
  } else if (const auto* i = s.as<If>()) {
    append_seq(cs, eval_bool(i->cond, l) ? *i->then_branch : *i->else_branch, l, out);
  } else if (const auto* c = s.as<QCase>()) {
    const int w = eval_qubit(c->control(), l);
    if (w == 0) throw CompileError("qcase control out of range");
    append_seq(with_control(cs, w, 0), c->branch(0), l, out);
    append_seq(with_control(cs, w, 1), c->branch(1), l, out);
  } else {
    throw CompileError("statement is not desugared");
  }
}

ProcedureSplit split_entries(const Program& p, const CallGraph& g, const std::vector<ControlledStatement>& entries) {
  ProcedureSplit out;
  std::map<int, std::vector<ControlledStatement>> groups;
  for (const auto& e : entries) {
    const auto* c = e.stmt->as<Call>();
    const int family = c ? g.family_of[static_cast<std::size_t>(p.find(c->proc))] : -1;
    if (family < 0) {
      out.plain.push_back(e);
    } else {
      groups[family].push_back(e);
    }
  }
  for (auto& [family, list] : groups) out.families.emplace_back(family, std::move(list));
  return out;
}

void check_static(const Program& p, int n) {
  const StaticResult r = static_walk(p, n);
  if (r.outcome == Outcome::Error) throw CompileError("program is erroneous at size " + std::to_string(n));
  if (r.outcome == Outcome::Diverged) throw CompileError("program diverges at size " + std::to_string(n));
}

class Compiler {
 public:
  Compiler(const Program& p, int n, const CompileOptions& opts)
      : prog_(p), n_(n), opts_(opts), graph_(build_call_graph(p)), next_wire_(n + 1) {}

  Circuit run() {
    std::vector<Gate> gates;
    compile({}, prog_.body, identity_list(n_), gates);
    Circuit c;
    c.wires = n_;
    c.ancillas = next_wire_ - n_ - 1;
    c.anchors = anchors_;
    c.gates = std::move(gates);
    return c;
  }

  CompileStats stats;

 private:
  using Entry = ControlledStatement;

  // Anchored ancilla of one (procedure, size) key.
  struct Slot {
    int wire = 0;
    PointerList pointers;
  };

  void compile(const ControlStructure& cs, const Stmt& s, const PointerList& l, std::vector<Gate>& out) {
    if (s.is<Skip>()) return;
    if (const auto* u = s.as<Unitary>()) {
      const int w = eval_qubit(u->target, l);
      if (w == 0) throw CompileError("unitary target out of range");
      const std::int64_t k = u->arg ? eval_int(*u->arg, l) : 0;
      out.push_back(make_gate(u->gate, u->phase ? u->phase->evaluate(k) : 0.0, w, cs));
      if (opts_.strategy == Strategy::Sequential && static_cast<std::int64_t>(out.size()) > opts_.gate_budget) {
        throw CompileError("gate budget of " + std::to_string(opts_.gate_budget) + " exceeded");
      }
    } else if (const auto* q = s.as<Seq>()) {
      for (const auto& x : q->body) compile(cs, x, l, out);
    } else if (const auto* i = s.as<If>()) {
      compile(cs, eval_bool(i->cond, l) ? *i->then_branch : *i->else_branch, l, out);
    } else if (const auto* c = s.as<QCase>()) {
      const int w = eval_qubit(c->control(), l);
      if (w == 0) throw CompileError("qcase control out of range");
      compile(with_control(cs, w, 0), c->branch(0), l, out);
      compile(with_control(cs, w, 1), c->branch(1), l, out);
    } else if (const auto* c = s.as<Call>()) {
      const PointerList callee = eval_set(c->arg, l);
      if (callee.empty()) return;
      const int idx = prog_.find(c->proc);
      const Stmt& body = prog_.decls[static_cast<std::size_t>(idx)].body;
      const int family = graph_.family_of[static_cast<std::size_t>(idx)];
      if (family < 0 || opts_.strategy == Strategy::Sequential) {
        compile(cs, body, callee, out);
      } else {
        optimize({Entry{cs, &body, callee}}, family, out);
      }
    } else {
      throw CompileError("statement is not desugared");
    }
  }

  // Builds the circuit of worklist entries that each make one call into
  // `family`, anchoring and merging calls of equal (procedure, size).
  void optimize(std::vector<Entry> initial, int family, std::vector<Gate>& out) {
    // Entries run by decreasing pointer-list size, FIFO within a size, so
    // that every merge into an ancilla is emitted before its anchored body.
    std::map<std::size_t, std::deque<Entry>, std::greater<>> work;
    auto push = [&](Entry e) { work[e.pointers.size()].push_back(std::move(e)); };
    for (auto& e : initial) push(std::move(e));

    std::map<std::pair<int, std::size_t>, Slot> anc;
    std::vector<Gate> left;
    std::vector<std::vector<Gate>> right;
    std::vector<Entry> context;
    auto defer = [&](Entry e) {
      if (!e.stmt->is<Skip>()) context.push_back(std::move(e));
    };

    while (!work.empty()) {
      auto bucket = work.begin();
      Entry e = std::move(bucket->second.front());
      bucket->second.pop_front();
      if (bucket->second.empty()) work.erase(bucket);
      const Stmt& s = *e.stmt;

      if (width(s, family) == 0) {
        defer(std::move(e));
      } else if (const auto* q = s.as<Seq>()) {
        std::size_t rec = q->body.size();
        for (std::size_t i = 0; i < q->body.size(); ++i) {
          if (width(q->body[i], family) == 0) continue;
          if (rec != q->body.size()) throw CompileError("sequence makes two recursive calls (width > 1)");
          rec = i;
        }
        for (std::size_t i = 0; i < rec; ++i) compile(e.controls, q->body[i], e.pointers, left);
        std::vector<Gate> block;
        for (std::size_t i = rec + 1; i < q->body.size(); ++i) compile(e.controls, q->body[i], e.pointers, block);
        if (!block.empty()) right.push_back(std::move(block));
        push({e.controls, &q->body[rec], e.pointers});
      } else if (const auto* i = s.as<If>()) {
        const Stmt& b = eval_bool(i->cond, e.pointers) ? *i->then_branch : *i->else_branch;
        Entry next{e.controls, &b, e.pointers};
        if (width(b, family) > 0) {
          push(std::move(next));
        } else {
          defer(std::move(next));
        }
      } else if (const auto* c = s.as<QCase>()) {
        const int w = eval_qubit(c->control(), e.pointers);
        if (w == 0) throw CompileError("qcase control out of range");
        for (int bit = 0; bit <= 1; ++bit) {
          Entry next{with_control(e.controls, w, bit), &c->branch(bit), e.pointers};
          if (width(*next.stmt, family) > 0) {
            push(std::move(next));
          } else {
            defer(std::move(next));
          }
        }
      } else if (const auto* c = s.as<Call>()) {
        PointerList callee = eval_set(c->arg, e.pointers);
        if (callee.empty()) continue;
        const int idx = prog_.find(c->proc);
        const auto key = std::make_pair(idx, callee.size());
        if (auto it = anc.find(key); it != anc.end()) {
          merge(e.controls, it->second, callee, left, right);
        } else {
          const int a = next_wire_++;
          anchors_.push_back({a, c->proc, static_cast<int>(callee.size())});
          ++stats.anchor_events;
          if (opts_.check_orthogonality) condition_[a] = condition(e.controls);
          support_[a] = support(e.controls);
          left.push_back(make_gate(GateName::Not, 0, a, e.controls));
          right.push_back({make_gate(GateName::Not, 0, a, e.controls)});
          anc.emplace(key, Slot{a, callee});
          push({ControlStructure{{a, 1}}, &prog_.decls[static_cast<std::size_t>(idx)].body, std::move(callee)});
        }
      } else {
        throw CompileError("unexpected statement in optimize");
      }
    }

    std::vector<Gate> middle;
    compile_context(context, middle);

    out.insert(out.end(), left.begin(), left.end());
    out.insert(out.end(), middle.begin(), middle.end());
    for (auto it = right.rbegin(); it != right.rend(); ++it) out.insert(out.end(), it->begin(), it->end());
  }

  void merge(const ControlStructure& cs, const Slot& slot, const PointerList& callee, std::vector<Gate>& left,
             std::vector<std::vector<Gate>>& right) {
    ++stats.merge_events;
    const int a = slot.wire;
    if (opts_.check_orthogonality) {
      ++stats.orthogonality_checks;
      const auto f = condition(cs);
      if (bdd_.conj(f, condition_.at(a)) != detail::Bdd::kFalse) {
        throw CompileError("orthogonality invariant violated: merge into ancilla " + std::to_string(a) +
                           " overlaps an earlier call");
      }
      condition_[a] = bdd_.disj(condition_[a], f);
    }
    const std::set<int> cs_support = support(cs);
    support_[a].insert(cs_support.begin(), cs_support.end());

    if (callee == slot.pointers) {
      left.push_back(make_gate(GateName::Not, 0, a, cs));
      right.push_back({make_gate(GateName::Not, 0, a, cs)});
      return;
    }
    if (opts_.strategy != Strategy::Swap) {
      throw CompileError("merging calls on different pointer lists needs the swap strategy");
    }

    // Route callee[i] onto slot.pointers[i]; the displaced wires of the
    // anchored list fill the positions the callee list leaves free.
    WireRoute route;
    for (std::size_t i = 0; i < callee.size(); ++i) route[callee[i]] = slot.pointers[i];
    const std::set<int> from(callee.begin(), callee.end());
    const std::set<int> to(slot.pointers.begin(), slot.pointers.end());
    std::vector<int> spare_from;
    std::vector<int> spare_to;
    std::set_difference(to.begin(), to.end(), from.begin(), from.end(), std::back_inserter(spare_from));
    std::set_difference(from.begin(), from.end(), to.begin(), to.end(), std::back_inserter(spare_to));
    for (std::size_t i = 0; i < spare_from.size(); ++i) route[spare_from[i]] = spare_to[i];
    for (int w : cs_support) {
      if (route.count(w)) throw CompileError("swap routing would move a wire the merge is controlled by");
    }

    const int r = next_wire_++;
    const auto needed = static_cast<std::size_t>(permutation_scratch(route));
    while (scratch_.size() < needed) scratch_.push_back(next_wire_++);
    std::vector<Gate> perm;
    append_controlled_permutation(perm, route, {r, 1}, scratch_);
    ++stats.permutation_blocks;

    left.push_back(make_gate(GateName::Not, 0, a, cs));
    left.push_back(make_gate(GateName::Not, 0, r, cs));
    left.insert(left.end(), perm.begin(), perm.end());
    std::vector<Gate> block(perm.rbegin(), perm.rend());
    block.push_back(make_gate(GateName::Not, 0, r, cs));
    block.push_back(make_gate(GateName::Not, 0, a, cs));
    right.push_back(std::move(block));
  }

  // Compiles the contextual list slice by slice: the t-th atomic statement of
  // every entry, plain statements first, then one optimize per family.
  void compile_context(const std::vector<Entry>& context, std::vector<Gate>& out) {
    std::vector<std::vector<Entry>> seqs;
    std::size_t slices = 0;
    for (const auto& e : context) {
      seqs.push_back(seq_decompose(e.controls, *e.stmt, e.pointers));
      slices = std::max(slices, seqs.back().size());
    }
    for (std::size_t t = 0; t < slices; ++t) {
      std::vector<Entry> slice;
      for (const auto& s : seqs) {
        if (t < s.size()) slice.push_back(s[t]);
      }
      ProcedureSplit split = split_entries(prog_, graph_, slice);
      for (const auto& e : split.plain) compile(e.controls, *e.stmt, e.pointers, out);
      for (auto& [family, entries] : split.families) {
        if (opts_.check_orthogonality) check_pairwise(entries);
        optimize(std::move(entries), family, out);
      }
    }
  }

  // Entries are pairwise disjoint iff each is disjoint from the union of the
  // ones before it.
  void check_pairwise(const std::vector<Entry>& entries) {
    auto seen = detail::Bdd::kFalse;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto f = condition(entries[i].controls);
      if (i > 0) {
        ++stats.orthogonality_checks;
        if (bdd_.conj(f, seen) != detail::Bdd::kFalse) {
          throw CompileError("orthogonality invariant violated between contextual statements");
        }
      }
      seen = bdd_.disj(seen, f);
    }
  }

  // Condition under which cs holds, over input wires; ancilla literals stand
  // for the disjunction of the control structures folded into the ancilla.
  detail::Bdd::Node condition(const ControlStructure& cs) {
    auto f = detail::Bdd::kTrue;
    for (const auto& c : cs) {
      detail::Bdd::Node lit;
      if (c.wire <= n_) {
        lit = bdd_.var(c.wire);
      } else {
        auto it = condition_.find(c.wire);
        if (it == condition_.end()) throw CompileError("control on an ancilla with no condition");
        lit = it->second;
      }
      f = bdd_.conj(f, c.polarity ? lit : bdd_.negate(lit));
    }
    return f;
  }

  // Input wires that cs depends on.
  std::set<int> support(const ControlStructure& cs) const {
    std::set<int> out;
    for (const auto& c : cs) {
      if (c.wire <= n_) {
        out.insert(c.wire);
      } else if (auto it = support_.find(c.wire); it != support_.end()) {
        out.insert(it->second.begin(), it->second.end());
      }
    }
    return out;
  }

  // Number of calls into `family` along one path of s.
  int width(const Stmt& s, int family) {
    const auto key = std::make_pair(&s, family);
    if (auto it = width_memo_.find(key); it != width_memo_.end()) return it->second;
    int w = 0;
    if (const auto* c = s.as<Call>()) {
      w = graph_.family_of[static_cast<std::size_t>(prog_.find(c->proc))] == family ? 1 : 0;
    } else if (const auto* q = s.as<Seq>()) {
      for (const auto& x : q->body) w += width(x, family);
    } else if (const auto* i = s.as<If>()) {
      w = std::max(width(*i->then_branch, family), width(*i->else_branch, family));
    } else if (const auto* k = s.as<QCase>()) {
      w = std::max(width(k->branch(0), family), width(k->branch(1), family));
    }
    width_memo_.emplace(key, w);
    return w;
  }

  const Program& prog_;
  int n_;
  CompileOptions opts_;
  CallGraph graph_;
  int next_wire_;
  std::vector<Anchor> anchors_;
  std::vector<int> scratch_;
  detail::Bdd bdd_;
  std::unordered_map<int, detail::Bdd::Node> condition_;
  std::unordered_map<int, std::set<int>> support_;
  std::map<std::pair<const Stmt*, int>, int> width_memo_;
};

void finish(CompileOutput& out) {
  out.stats.ancilla_count = out.circuit.ancillas;
  out.stats.size = circuit_size(out.circuit);
  out.stats.depth = circuit_depth(out.circuit);
  out.stats.lowered_size = lowered_size(out.circuit);
}

}  // namespace

std::vector<ControlledStatement> seq_decompose(const ControlStructure& cs, const Stmt& s, const PointerList& l) {
  std::vector<ControlledStatement> out;
  append_seq(cs, s, l, out);
  return out;
}

ProcedureSplit procedure_split(const Program& p, const std::vector<ControlledStatement>& entries) {
  return split_entries(p, build_call_graph(p), entries);
}

CompileOutput compile(const Program& p, int n, const CompileOptions& opts) {
  if (n < 0) throw CompileError("negative input size");
  const ClassificationReport cls = classify_program(p);
  if (!cls.wf) throw CompileError("program is not well-founded");
  if (opts.strategy != Strategy::Sequential && !cls.width_le_1) {
    throw CompileError("strategy " + std::string(strategy_name(opts.strategy)) + " needs WIDTH<=1");
  }
  check_static(p, n);
  CompileOutput out;
  out.strategy = opts.strategy;
  run_with_large_stack([&] {
    Compiler c(p, n, opts);
    out.circuit = c.run();
    out.stats = c.stats;
  });
  finish(out);
  return out;
}

CompileOutput compile_baseline(const Program& p, int n, std::int64_t gate_budget) {
  CompileOptions opts;
  opts.strategy = Strategy::Sequential;
  opts.gate_budget = gate_budget;
  return compile(p, n, opts);
}

BaselineCount count_baseline(const Program& p, int n) {
  if (n < 0) throw CompileError("negative input size");
  if (!classify_program(p).wf) throw CompileError("program is not well-founded");
  check_static(p, n);
  using boost::multiprecision::cpp_int;
  // Branching depends only on sizes, so the count of a call depends only on
  // the procedure and the length of its pointer list.
  std::map<std::pair<int, std::size_t>, cpp_int> memo;
  std::function<cpp_int(const Stmt&, const PointerList&)> count = [&](const Stmt& s, const PointerList& l) -> cpp_int {
    if (s.is<Unitary>()) return 1;
    if (const auto* q = s.as<Seq>()) {
      cpp_int total = 0;
      for (const auto& x : q->body) total += count(x, l);
      return total;
    }
    if (const auto* i = s.as<If>()) return count(eval_bool(i->cond, l) ? *i->then_branch : *i->else_branch, l);
    if (const auto* c = s.as<QCase>()) return count(c->branch(0), l) + count(c->branch(1), l);
    if (const auto* c = s.as<Call>()) {
      const PointerList callee = eval_set(c->arg, l);
      if (callee.empty()) return 0;
      const int idx = p.find(c->proc);
      const auto key = std::make_pair(idx, callee.size());
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      cpp_int r = count(p.decls[static_cast<std::size_t>(idx)].body, identity_list(static_cast<int>(callee.size())));
      memo.emplace(key, r);
      return r;
    }
    return 0;
  };
  BaselineCount out;
  out.wires = n;
  run_with_large_stack([&] { out.gates = count(p.body, identity_list(n)); });
  out.size = out.gates + n;
  return out;
}

}  // namespace pbp
