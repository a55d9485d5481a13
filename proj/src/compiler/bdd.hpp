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
#include <vector>

namespace pbp::detail {

/// Reduced ordered BDD over integer variables, smaller variables on top.
/// Node 0 is false and node 1 is true.
class Bdd {
 public:
  using Node = std::uint32_t;
  static constexpr Node kFalse = 0;
  static constexpr Node kTrue = 1;

  Bdd();

  Node var(int v);
  Node negate(Node a);
  Node conj(Node a, Node b);
  Node disj(Node a, Node b);

 private:
  struct Entry {
    int var;
    Node lo, hi;
  };
  enum Op : std::uint32_t { kAnd, kOr, kNot };
  /// Lossy memo of recent operations; a miss only costs recomputation.
  struct CacheLine {
    std::uint32_t op = ~0U;
    Node a = 0, b = 0, r = 0;
  };

  Node make(int v, Node lo, Node hi);
  Node apply(Op op, Node a, Node b);
  void grow_unique();
  static std::uint64_t hash(std::uint64_t x, std::uint64_t y, std::uint64_t z);

  std::vector<Entry> nodes_;
  /// Open-addressing unique table of node ids; 0 marks an empty slot.
  std::vector<Node> unique_;
  std::vector<CacheLine> cache_;
};

}  // namespace pbp::detail
