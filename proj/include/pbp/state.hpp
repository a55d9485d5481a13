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

#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pbp/ast.hpp"

namespace pbp {

using Amp = std::complex<double>;

/// 2x2 matrix in row-major order.
struct Mat2 {
  Amp m00, m01, m10, m11;
};

/// The matrix of GATE applied with angle theta (ignored by NOT and H).
/// RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]], PH(t) = diag(1, e^{it}).
Mat2 gate_matrix(GateName gate, double theta);

/// Dense state over n qubits. Wire w (1-based) is bit n - w of the index,
/// so wire 1 is the most significant bit.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n);  // |0...0>
  StateVector(int n, std::vector<Amp> amps);

  static StateVector basis(int n, std::uint64_t index);
  /// Basis state from a bitstring such as "0101" (wire 1 first).
  static StateVector from_bits(std::string_view bits);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Amp>& amplitudes() const { return amps_; }
  std::vector<Amp>& amplitudes() { return amps_; }
  Amp operator[](std::size_t i) const { return amps_[i]; }
  Amp& operator[](std::size_t i) { return amps_[i]; }

  /// Applies u to index bit `bit` on the amplitudes whose index satisfies
  /// (index & mask) == value.
  void apply(int bit, const Mat2& u, std::uint64_t mask = 0, std::uint64_t value = 0);
  double norm() const;
  double max_abs_diff(const StateVector& other) const;

 private:
  int n_ = 0;
  std::vector<Amp> amps_;
};

/// Sparse state over at most 62 qubits; amplitudes absent from the map are 0.
class SparseState {
 public:
  SparseState() = default;
  explicit SparseState(int n) : n_(n) {}
  static SparseState basis(int n, std::uint64_t index);
  static SparseState from_dense(const StateVector& s);
  StateVector to_dense() const;

  int num_qubits() const { return n_; }
  const std::unordered_map<std::uint64_t, Amp>& amplitudes() const { return amps_; }
  Amp at(std::uint64_t index) const;
  void set(std::uint64_t index, Amp a);

  void apply(int bit, const Mat2& u, std::uint64_t mask = 0, std::uint64_t value = 0);

 private:
  int n_ = 0;
  std::unordered_map<std::uint64_t, Amp> amps_;
};

}  // namespace pbp
