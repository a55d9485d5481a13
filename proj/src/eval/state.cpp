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

#include "pbp/state.hpp"

#include <cmath>

namespace pbp {

namespace {

constexpr double kPrune = 1e-15;

void check_qubits(int n, int limit) {
  if (n < 0 || n > limit) {
    throw Error("state over " + std::to_string(n) + " qubits is not supported (limit " + std::to_string(limit) + ")");
  }
}

}  // namespace

Mat2 gate_matrix(GateName gate, double theta) {
  switch (gate) {
    case GateName::Not:
      return {0, 1, 1, 0};
    case GateName::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return {r, r, r, -r};
    }
    case GateName::Ry: {
      const double c = std::cos(theta / 2);
      const double s = std::sin(theta / 2);
      return {c, -s, s, c};
    }
    case GateName::Ph:
      return {1, 0, 0, std::polar(1.0, theta)};
  }
  return {1, 0, 0, 1};
}

StateVector::StateVector(int n) : n_(n) {
  check_qubits(n, 30);
  amps_.assign(std::size_t{1} << n, Amp{0});
  amps_[0] = 1;
}

StateVector::StateVector(int n, std::vector<Amp> amps) : n_(n), amps_(std::move(amps)) {
  check_qubits(n, 30);
  if (amps_.size() != (std::size_t{1} << n)) throw Error("amplitude vector length is not 2^n");
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  StateVector s(n);
  if (index >= s.dim()) throw Error("basis index out of range");
  s.amps_[0] = 0;
  s.amps_[index] = 1;
  return s;
}

StateVector StateVector::from_bits(std::string_view bits) {
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error("bitstring may only contain 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return basis(static_cast<int>(bits.size()), index);
}

void StateVector::apply(int bit, const Mat2& u, std::uint64_t mask, std::uint64_t value) {
  const std::uint64_t tb = std::uint64_t{1} << bit;
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & tb) || (i & mask) != value) continue;
    const Amp a0 = amps_[i];
    const Amp a1 = amps_[i | tb];
    amps_[i] = u.m00 * a0 + u.m01 * a1;
    amps_[i | tb] = u.m10 * a0 + u.m11 * a1;
  }
}

double StateVector::norm() const {
  double s = 0;
  for (const Amp& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

double StateVector::max_abs_diff(const StateVector& other) const {
  if (other.dim() != dim()) throw Error("state dimensions differ");
  double m = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) m = std::max(m, std::abs(amps_[i] - other.amps_[i]));
  return m;
}

SparseState SparseState::basis(int n, std::uint64_t index) {
  check_qubits(n, 62);
  SparseState s(n);
  s.amps_[index] = 1;
  return s;
}

SparseState SparseState::from_dense(const StateVector& d) {
  SparseState s(d.num_qubits());
  for (std::size_t i = 0; i < d.dim(); ++i) {
    if (std::abs(d[i]) > kPrune) s.amps_[i] = d[i];
  }
  return s;
}

StateVector SparseState::to_dense() const {
  StateVector d(n_);
  d[0] = 0;
  for (const auto& [i, a] : amps_) d[i] = a;
  return d;
}

Amp SparseState::at(std::uint64_t index) const {
  auto it = amps_.find(index);
  return it == amps_.end() ? Amp{0} : it->second;
}

void SparseState::set(std::uint64_t index, Amp a) {
  if (std::abs(a) > kPrune) {
    amps_[index] = a;
  } else {
    amps_.erase(index);
  }
}

void SparseState::apply(int bit, const Mat2& u, std::uint64_t mask, std::uint64_t value) {
  const std::uint64_t tb = std::uint64_t{1} << bit;
  std::vector<std::uint64_t> lows;
  for (const auto& [i, a] : amps_) {
    if ((i & mask) != value) continue;
    const std::uint64_t low = i & ~tb;
    // Visit each pair once: from its low member, or from the high member
    // when the low one is absent.
    if ((i & tb) == 0 || amps_.find(low) == amps_.end()) lows.push_back(low);
  }
  for (const std::uint64_t low : lows) {
    const Amp a0 = at(low);
    const Amp a1 = at(low | tb);
    set(low, u.m00 * a0 + u.m01 * a1);
    set(low | tb, u.m10 * a0 + u.m11 * a1);
  }
}

}  // namespace pbp
