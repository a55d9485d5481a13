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
#include <map>
#include <string>
#include <vector>

#include "pbp/ast.hpp"
#include "pbp/state.hpp"

namespace pbp {

class CircuitError : public Error {
 public:
  using Error::Error;
};

struct Control {
  int wire = 0;
  int polarity = 1;

  bool operator==(const Control&) const = default;
};

/// Partial map wire -> polarity, kept sorted by wire with no duplicates.
using ControlStructure = std::vector<Control>;

/// cs[wire := polarity].
ControlStructure with_control(ControlStructure cs, int wire, int polarity);
/// Polarity of `wire` in cs, or -1 when it is not in the domain.
int polarity_of(const ControlStructure& cs, int wire);

struct Gate {
  GateName kind = GateName::Not;
  /// Radians in [0, 2pi); only meaningful for RY and PH.
  double angle = 0.0;
  int target = 0;
  ControlStructure controls;

  bool operator==(const Gate&) const = default;
};

/// Gate with its angle reduced to [0, 2pi) and its controls sorted.
Gate make_gate(GateName kind, double angle, int target, ControlStructure controls = {});

/// Label of an ancilla allocated by an anchoring event.
struct Anchor {
  int wire = 0;
  std::string proc;
  int size = 0;

  bool operator==(const Anchor&) const = default;
};

/// Gates over input wires 1..wires and ancilla wires wires+1..wires+ancillas.
/// Ancillas start in |0> and must end in |0>.
struct Circuit {
  int wires = 0;
  int ancillas = 0;
  std::vector<Anchor> anchors;
  std::vector<Gate> gates;

  int total_wires() const { return wires + ancillas; }
  /// Throws CircuitError when a gate names an unknown wire, targets one of
  /// its own controls, or repeats a control wire.
  void validate() const;

  bool operator==(const Circuit&) const = default;
};

Mat2 gate_unitary(const Gate& g);

/// Applies c to a state over all total_wires() wires (at most 30).
StateVector apply_circuit(const Circuit& c, const StateVector& psi);

/// Output of a batched simulation with ancillas prepared in |0>.
struct Simulation {
  /// One output per input, restricted to all-zero ancillas.
  std::vector<StateVector> outputs;
  /// Largest squared norm left on components with some ancilla set.
  double ancilla_mass = 0.0;
};

/// Simulates c on each input (over c.wires qubits) with every ancilla in
/// |0>. Uses a sparse representation, so ancilla counts beyond the dense
/// limit are fine as long as few ancilla patterns are populated at once.
Simulation simulate(const Circuit& c, const std::vector<StateVector>& inputs);

/// |gates| + wires + ancillas.
std::int64_t circuit_size(const Circuit& c);
/// Number of ASAP layers; gates share a layer only when their wire sets are
/// disjoint.
std::int64_t circuit_depth(const Circuit& c);
/// Gate count after expanding each k-controlled gate at cost max(1, 2k - 1).
std::int64_t lowered_size(const Circuit& c);

std::string serialize(const Circuit& c);
/// Throws CircuitError on schema or invariant violations.
Circuit deserialize(const std::string& text);

/// Routing of data between wires: data on wire w moves to route.at(w). The
/// keys and values must be the same set of wires.
using WireRoute = std::map<int, int>;

/// Scratch ancillas needed by append_controlled_permutation for this route.
int permutation_scratch(const WireRoute& route);

/// Appends gates applying `route` when the control matches. Every cycle is
/// split into two rounds of disjoint transpositions; each transposition is a
/// controlled swap (CNOT, Toffoli, CNOT) whose Toffoli reads its own copy of
/// the control, fanned out into `scratch` by a CNOT doubling tree and
/// uncomputed afterwards. For a route over n wires this uses fewer than 4n
/// gates and depth at most 2*ceil(log2 n) + 4. `scratch` must hold at least
/// permutation_scratch(route) wires in |0>; they are restored.
void append_controlled_permutation(std::vector<Gate>& out, const WireRoute& route, Control control,
                                   const std::vector<int>& scratch);

/// Standalone circuit for the permutation perm of wires 1..n (perm[i - 1] is
/// the destination of wire i) controlled on `control`, which must lie
/// outside 1..n. Fan-out ancillas follow wire max(n, control.wire).
Circuit controlled_permutation(const std::vector<int>& perm, Control control);

}  // namespace pbp
