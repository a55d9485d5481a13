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


#include "bdd.hpp"

#include <algorithm>
#include <climits>
#include <utility>

namespace pbp::detail {

Bdd::Bdd() : unique_(1 << 12, 0), cache_(1 << 16) {
  nodes_.push_back({INT_MAX, kFalse, kFalse});
  nodes_.push_back({INT_MAX, kTrue, kTrue});
}

std::uint64_t Bdd::hash(std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  std::uint64_t h = x * 0x9e3779b97f4a7c15ULL;
  h ^= (y + 0x632be59bd9b4e019ULL) * 0xc2b2ae3d27d4eb4fULL;
  h ^= (z + 0x165667b19e3779f9ULL) * 0xff51afd7ed558ccdULL;
  return h ^ (h >> 29);
}

void Bdd::grow_unique() {
  std::vector<Node> bigger(unique_.size() * 2, 0);
  const std::size_t mask = bigger.size() - 1;
  for (Node n : unique_) {
    if (n == 0) continue;
    const Entry& e = nodes_[n];
    std::size_t i = hash(static_cast<std::uint32_t>(e.var), e.lo, e.hi) & mask;
    while (bigger[i] != 0) i = (i + 1) & mask;
    bigger[i] = n;
  }
  unique_ = std::move(bigger);
}

Bdd::Node Bdd::make(int v, Node lo, Node hi) {
  if (lo == hi) return lo;
  const std::size_t mask = unique_.size() - 1;
  std::size_t i = hash(static_cast<std::uint32_t>(v), lo, hi) & mask;
  for (; unique_[i] != 0; i = (i + 1) & mask) {
    const Entry& e = nodes_[unique_[i]];
    if (e.var == v && e.lo == lo && e.hi == hi) return unique_[i];
  }
  const Node n = static_cast<Node>(nodes_.size());
  nodes_.push_back({v, lo, hi});
  unique_[i] = n;
  if (2 * nodes_.size() > unique_.size()) {
    grow_unique();
    if (cache_.size() < unique_.size()) cache_.resize(unique_.size());
  }
  return n;
}

Bdd::Node Bdd::var(int v) { return make(v, kFalse, kTrue); }

Bdd::Node Bdd::negate(Node a) { return apply(kNot, a, 0); }

Bdd::Node Bdd::conj(Node a, Node b) { return apply(kAnd, a, b); }

Bdd::Node Bdd::disj(Node a, Node b) { return apply(kOr, a, b); }

Bdd::Node Bdd::apply(Op op, Node a, Node b) {
  switch (op) {
    case kNot:
      if (a <= kTrue) return a ^ 1U;
      break;
    case kAnd:
      if (a == kFalse || b == kFalse) return kFalse;
      if (a == kTrue) return b;
      if (b == kTrue || a == b) return a;
      if (a > b) std::swap(a, b);
      break;
    case kOr:
      if (a == kTrue || b == kTrue) return kTrue;
      if (a == kFalse) return b;
      if (b == kFalse || a == b) return a;
      if (a > b) std::swap(a, b);
      break;
  }
  CacheLine& line = cache_[hash(op, a, b) & (cache_.size() - 1)];
  if (line.op == op && line.a == a && line.b == b) return line.r;
  const Entry ea = nodes_[a];
  Node r;
  if (op == kNot) {
    const Node lo = apply(kNot, ea.lo, 0);
    const Node hi = apply(kNot, ea.hi, 0);
    r = make(ea.var, lo, hi);
  } else {
    const Entry eb = nodes_[b];
    const int v = std::min(ea.var, eb.var);
    const Node lo = apply(op, ea.var == v ? ea.lo : a, eb.var == v ? eb.lo : b);
    const Node hi = apply(op, ea.var == v ? ea.hi : a, eb.var == v ? eb.hi : b);
    r = make(v, lo, hi);
  }
  // The recursion may have resized the cache.
  CacheLine& slot = cache_[hash(op, a, b) & (cache_.size() - 1)];
  slot = {op, a, b, r};
  return r;
}

}  // namespace pbp::detail
