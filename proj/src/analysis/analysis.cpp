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

#include "pbp/analysis.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pbp/frontend.hpp"

namespace pbp {

namespace {

void for_each_call(const Stmt& s, const std::function<void(const Call&)>& fn) {
  if (const auto* c = s.as<Call>()) {
    fn(*c);
  } else if (const auto* q = s.as<Seq>()) {
    for (const auto& x : q->body) for_each_call(x, fn);
  } else if (const auto* i = s.as<If>()) {
    for_each_call(*i->then_branch, fn);
    for_each_call(*i->else_branch, fn);
  } else if (const auto* k = s.as<QCase>()) {
    for (const auto& [label, b] : k->branches) for_each_call(b, fn);
  }
}

int width_of(const Stmt& s, int proc, const CallGraph& g, const Program& p) {
  if (const auto* c = s.as<Call>()) return g.equivalent(proc, p.find(c->proc)) ? 1 : 0;
  if (const auto* q = s.as<Seq>()) {
    int total = 0;
    for (const auto& x : q->body) total += width_of(x, proc, g, p);
    return total;
  }
  if (const auto* i = s.as<If>()) {
    return std::max(width_of(*i->then_branch, proc, g, p), width_of(*i->else_branch, proc, g, p));
  }
  if (const auto* k = s.as<QCase>()) {
    int m = 0;
    for (const auto& [label, b] : k->branches) m = std::max(m, width_of(b, proc, g, p));
    return m;
  }
  return 0;
}

std::vector<int> ranks(const CallGraph& g) {
  const int n = static_cast<int>(g.procs.size());
  std::vector<int> rk(static_cast<std::size_t>(n), -1);
  std::function<int(int)> go = [&](int a) -> int {
    if (rk[a] >= 0) return rk[a];
    int best = 0;
    bool any = false;
    for (int b = 0; b < n; ++b) {
      if (!g.reaches(a, b)) continue;
      any = true;
      if (g.above(a, b)) best = std::max(best, go(b));
    }
    if (!any) return rk[a] = 0;
    return rk[a] = g.recursive(a) ? 1 + best : best;
  };
  for (int a = 0; a < n; ++a) go(a);
  return rk;
}

}  // namespace

int CallGraph::index(std::string_view name) const {
  for (std::size_t i = 0; i < procs.size(); ++i) {
    if (procs[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CallGraph build_call_graph(const Program& p) {
  CallGraph g;
  const int n = static_cast<int>(p.decls.size());
  for (const auto& d : p.decls) g.procs.push_back(d.name);
  std::set<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a) {
    for_each_call(p.decls[static_cast<std::size_t>(a)].body, [&](const Call& c) {
      const int b = p.find(c.proc);
      if (b < 0) throw Error("call to undeclared procedure '" + c.proc + "'");
      edges.emplace(a, b);
    });
  }
  g.edges.assign(edges.begin(), edges.end());
  g.reach.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (const auto& [a, b] : g.edges) g.reach[a][b] = true;
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      if (!g.reach[a][k]) continue;
      for (int b = 0; b < n; ++b) {
        if (g.reach[k][b]) g.reach[a][b] = true;
      }
    }
  }
  g.family_of.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    if (!g.recursive(a) || g.family_of[a] >= 0) continue;
    std::vector<int> fam;
    for (int b = 0; b < n; ++b) {
      if (g.equivalent(a, b)) {
        fam.push_back(b);
        g.family_of[b] = static_cast<int>(g.families.size());
      }
    }
    g.families.push_back(std::move(fam));
  }
  return g;
}

int width(const Program& p, const std::string& proc) {
  const int idx = p.find(proc);
  if (idx < 0) throw Error("undeclared procedure '" + proc + "'");
  return width_of(p.decls[static_cast<std::size_t>(idx)].body, idx, build_call_graph(p), p);
}

int rank(const Program& p, const std::string& proc) {
  const int idx = p.find(proc);
  if (idx < 0) throw Error("undeclared procedure '" + proc + "'");
  return ranks(build_call_graph(p))[static_cast<std::size_t>(idx)];
}

ClassificationReport classify_program(const Program& p) {
  ClassificationReport r;
  const CallGraph g = build_call_graph(p);
  const std::vector<int> rk = ranks(g);
  for (std::size_t a = 0; a < p.decls.size(); ++a) {
    ProcedureInfo info;
    info.name = p.decls[a].name;
    info.width = width_of(p.decls[a].body, static_cast<int>(a), g, p);
    info.rank = rk[a];
    info.recursive = g.recursive(static_cast<int>(a));
    info.family = g.family_of[a];
    if (info.width > 1) {
      r.width_le_1 = false;
      r.wide_procedures.push_back(info.name);
    }
    r.procedures.push_back(std::move(info));
  }

  std::vector<SetExpr> distinct;
  auto visit = [&](const std::string& caller, int caller_idx, const Call& c) {
    const int callee = p.find(c.proc);
    if (!c.arg.is_formal() &&
        std::find(distinct.begin(), distinct.end(), c.arg) == distinct.end()) {
      distinct.push_back(c.arg);
      r.call_arguments.push_back(pretty_print(c.arg));
    }
    if (caller_idx >= 0 && g.equivalent(caller_idx, callee) && c.arg.is_formal()) {
      r.wf = false;
      r.wf_violations.push_back({caller, c.proc, pretty_print(c.arg)});
    }
  };
  for (std::size_t a = 0; a < p.decls.size(); ++a) {
    for_each_call(p.decls[a].body, [&](const Call& c) { visit(p.decls[a].name, static_cast<int>(a), c); });
  }
  for_each_call(p.body, [&](const Call& c) { visit("", -1, c); });

  r.basic = distinct.size() <= 1;
  if (r.basic && !distinct.empty()) r.basic_argument = r.call_arguments.front();
  r.pbp = r.wf && r.width_le_1 && r.basic;
  return r;
}

std::string ClassificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["pbp"] = pbp;
  j["wf"] = wf;
  j["width_le_1"] = width_le_1;
  j["basic"] = basic;
  j["basic_argument"] = basic_argument ? nlohmann::ordered_json(*basic_argument) : nlohmann::ordered_json();
  j["call_arguments"] = call_arguments;
  auto procs = nlohmann::ordered_json::array();
  for (const auto& p : procedures) {
    procs.push_back({{"name", p.name},
                     {"width", p.width},
                     {"rank", p.rank},
                     {"recursive", p.recursive},
                     {"family", p.family}});
  }
  j["procedures"] = procs;
  auto viol = nlohmann::ordered_json::array();
  for (const auto& v : wf_violations) {
    viol.push_back({{"caller", v.caller}, {"callee", v.callee}, {"argument", v.argument}});
  }
  j["wf_violations"] = viol;
  j["wide_procedures"] = wide_procedures;
  return j.dump(2);
}

std::string ClassificationReport::to_table() const {
  std::ostringstream out;
  std::size_t w = 9;
  for (const auto& p : procedures) w = std::max(w, p.name.size());
  out << std::string("procedure") << std::string(w - 9 + 2, ' ') << "width  rank  recursive  family\n";
  for (const auto& p : procedures) {
    out << p.name << std::string(w - p.name.size() + 2, ' ');
    char line[64];
    std::snprintf(line, sizeof line, "%5d  %4d  %-9s  %s\n", p.width, p.rank, p.recursive ? "yes" : "no",
                  p.family >= 0 ? std::to_string(p.family).c_str() : "-");
    out << line;
  }
  auto flag = [](bool b) { return b ? "yes" : "no"; };
  out << "\nWF        " << flag(wf) << "\n";
  for (const auto& v : wf_violations) {
    out << "  call " << v.callee << "(" << v.argument << ") in " << v.caller << " removes no qubit\n";
  }
  out << "WIDTH<=1  " << flag(width_le_1) << "\n";
  for (const auto& name : wide_procedures) out << "  " << name << " has width > 1\n";
  out << "BASIC     " << flag(basic) << "\n";
  for (const auto& a : call_arguments) out << "  argument " << a << "\n";
  out << "PBP       " << flag(pbp) << "\n";
  return out.str();
}

int ClassificationReport::exit_code() const {
  if (pbp) return 0;
  if (wf && width_le_1) return 2;
  return 3;
}

}  // namespace pbp
