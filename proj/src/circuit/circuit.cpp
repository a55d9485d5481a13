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

#include "pbp/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "json.hpp"

namespace pbp {

ControlStructure with_control(ControlStructure cs, int wire, int polarity) {
  auto it = std::lower_bound(cs.begin(), cs.end(), wire, [](const Control& c, int w) { return c.wire < w; });
  if (it != cs.end() && it->wire == wire) {
    it->polarity = polarity;
  } else {
    cs.insert(it, Control{wire, polarity});
  }
  return cs;
}

int polarity_of(const ControlStructure& cs, int wire) {
  for (const auto& c : cs) {
    if (c.wire == wire) return c.polarity;
  }
  return -1;
}

Gate make_gate(GateName kind, double angle, int target, ControlStructure controls) {
  Gate g;
  g.kind = kind;
  if (kind == GateName::Ry || kind == GateName::Ph) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    angle = std::fmod(angle, two_pi);
    if (angle < 0) angle += two_pi;
    if (angle >= two_pi) angle = 0.0;
    g.angle = angle;
  }
  g.target = target;
  std::sort(controls.begin(), controls.end(), [](const Control& a, const Control& b) { return a.wire < b.wire; });
  g.controls = std::move(controls);
  return g;
}

void Circuit::validate() const {
  if (wires < 0 || ancillas < 0) throw CircuitError("negative wire count");
  const int total = total_wires();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    const std::string where = "gate " + std::to_string(i) + ": ";
    if (g.target < 1 || g.target > total) throw CircuitError(where + "target wire out of range");
    int prev = 0;
    for (const auto& c : g.controls) {
      if (c.wire < 1 || c.wire > total) throw CircuitError(where + "control wire out of range");
      if (c.wire <= prev) throw CircuitError(where + "control wires must be distinct and sorted");
      if (c.polarity != 0 && c.polarity != 1) throw CircuitError(where + "polarity must be 0 or 1");
      if (c.wire == g.target) throw CircuitError(where + "target wire is also a control");
      prev = c.wire;
    }
    if (!(g.angle >= 0.0 && g.angle < 2.0 * std::numbers::pi)) throw CircuitError(where + "angle outside [0, 2pi)");
  }
  for (const auto& a : anchors) {
    if (a.wire <= wires || a.wire > total) throw CircuitError("anchor wire is not an ancilla");
  }
}

Mat2 gate_unitary(const Gate& g) { return gate_matrix(g.kind, g.angle); }

StateVector apply_circuit(const Circuit& c, const StateVector& psi) {
  const int total = c.total_wires();
  if (psi.num_qubits() != total) {
    throw CircuitError("state has " + std::to_string(psi.num_qubits()) + " qubits, circuit has " +
                       std::to_string(total) + " wires");
  }
  StateVector out = psi;
  for (const Gate& g : c.gates) {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;
    for (const auto& ctl : g.controls) {
      const std::uint64_t bit = std::uint64_t{1} << (total - ctl.wire);
      mask |= bit;
      if (ctl.polarity) value |= bit;
    }
    out.apply(total - g.target, gate_unitary(g), mask, value);
  }
  return out;
}

namespace {

// Batched sparse simulation. A key holds one bit per wire (wire w at bit
// w - 1) and maps to one amplitude per input state.
template <int NW>
class BatchState {
 public:
  using Key = std::array<std::uint64_t, NW>;

  BatchState(int batch) : batch_(batch) {}

  void add(const Key& k, std::size_t column, Amp a) { amps_[slot(k) * batch_ + column] += a; }

  void apply(const Gate& g) {
    const Mat2 u = gate_unitary(g);
    const bool diagonal = u.m01 == Amp(0) && u.m10 == Amp(0);
    const std::size_t count = keys_.size();
    std::vector<char> done(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
      if (done[i] || !controls_hold(keys_[i], g.controls)) continue;
      if (diagonal) {
        const Amp f = bit(keys_[i], g.target) ? u.m11 : u.m00;
        if (f != Amp(1)) {
          for (std::size_t b = 0; b < batch_; ++b) amps_[i * batch_ + b] *= f;
        }
        continue;
      }
      Key other = keys_[i];
      other[(g.target - 1) / 64] ^= std::uint64_t{1} << ((g.target - 1) % 64);
      const std::size_t j = slot(other);
      if (j < count) done[j] = 1;
      done[i] = 1;
      const std::size_t i0 = bit(keys_[i], g.target) ? j : i;
      const std::size_t i1 = i0 == i ? j : i;
      for (std::size_t b = 0; b < batch_; ++b) {
        const Amp a0 = amps_[i0 * batch_ + b];
        const Amp a1 = amps_[i1 * batch_ + b];
        amps_[i0 * batch_ + b] = u.m00 * a0 + u.m01 * a1;
        amps_[i1 * batch_ + b] = u.m10 * a0 + u.m11 * a1;
      }
    }
    if (keys_.size() > 2 * pruned_size_ + 64) prune();
  }

  void prune() {
    std::vector<Key> keys;
    std::vector<Amp> amps;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      bool live = false;
      for (std::size_t b = 0; b < batch_ && !live; ++b) live = std::norm(amps_[i * batch_ + b]) > 1e-32;
      if (!live) continue;
      keys.push_back(keys_[i]);
      amps.insert(amps.end(), amps_.begin() + static_cast<std::ptrdiff_t>(i * batch_),
                  amps_.begin() + static_cast<std::ptrdiff_t>((i + 1) * batch_));
    }
    keys_ = std::move(keys);
    amps_ = std::move(amps);
    index_.clear();
    for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], i);
    pruned_size_ = keys_.size();
  }

  static bool bit(const Key& k, int wire) { return (k[(wire - 1) / 64] >> ((wire - 1) % 64)) & 1; }

  const std::vector<Key>& keys() const { return keys_; }
  Amp amp(std::size_t slot, std::size_t column) const { return amps_[slot * batch_ + column]; }

 private:
  struct Hash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (std::uint64_t w : k) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  static bool controls_hold(const Key& k, const ControlStructure& cs) {
    for (const auto& c : cs) {
      if (static_cast<int>(bit(k, c.wire)) != c.polarity) return false;
    }
    return true;
  }

  std::size_t slot(const Key& k) {
    auto [it, inserted] = index_.emplace(k, keys_.size());
    if (inserted) {
      keys_.push_back(k);
      amps_.resize(amps_.size() + batch_, Amp(0));
    }
    return it->second;
  }

  std::size_t batch_;
  std::size_t pruned_size_ = 0;
  std::vector<Key> keys_;
  std::vector<Amp> amps_;
  std::unordered_map<Key, std::size_t, Hash> index_;
};

template <int NW>
Simulation simulate_words(const Circuit& c, const std::vector<StateVector>& inputs) {
  using State = BatchState<NW>;
  const int n = c.wires;
  State state(static_cast<int>(inputs.size()));
  for (std::size_t col = 0; col < inputs.size(); ++col) {
    const auto& amps = inputs[col].amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
      if (amps[idx] == Amp(0)) continue;
      typename State::Key k{};
      for (int w = 1; w <= n; ++w) {
        if ((idx >> (n - w)) & 1) k[(w - 1) / 64] |= std::uint64_t{1} << ((w - 1) % 64);
      }
      state.add(k, col, amps[idx]);
    }
  }
  for (const Gate& g : c.gates) state.apply(g);

  Simulation sim;
  sim.outputs.assign(inputs.size(), StateVector(n));
  for (auto& o : sim.outputs) o[0] = 0;
  std::vector<double> leak(inputs.size(), 0.0);
  const int total = c.total_wires();
  for (std::size_t s = 0; s < state.keys().size(); ++s) {
    const auto& k = state.keys()[s];
    bool clean = true;
    for (int w = n + 1; w <= total && clean; ++w) clean = !State::bit(k, w);
    std::uint64_t idx = 0;
    for (int w = 1; w <= n; ++w) {
      if (State::bit(k, w)) idx |= std::uint64_t{1} << (n - w);
    }
    for (std::size_t col = 0; col < inputs.size(); ++col) {
      if (clean) {
        sim.outputs[col][idx] += state.amp(s, col);
      } else {
        leak[col] += std::norm(state.amp(s, col));
      }
    }
  }
  for (double l : leak) sim.ancilla_mass = std::max(sim.ancilla_mass, l);
  return sim;
}

}  // namespace

Simulation simulate(const Circuit& c, const std::vector<StateVector>& inputs) {
  if (c.wires > 30) throw CircuitError("simulation supports at most 30 input wires");
  for (const auto& in : inputs) {
    if (in.num_qubits() != c.wires) throw CircuitError("input state does not match the circuit's input wires");
  }
  const int total = c.total_wires();
  if (total <= 64) return simulate_words<1>(c, inputs);
  if (total <= 128) return simulate_words<2>(c, inputs);
  if (total <= 256) return simulate_words<4>(c, inputs);
  if (total <= 1024) return simulate_words<16>(c, inputs);
  if (total <= 4096) return simulate_words<64>(c, inputs);
  throw CircuitError("simulation supports at most 4096 wires");
}

std::int64_t circuit_size(const Circuit& c) {
  return static_cast<std::int64_t>(c.gates.size()) + c.wires + c.ancillas;
}

std::int64_t circuit_depth(const Circuit& c) {
  std::vector<std::int64_t> layer(static_cast<std::size_t>(c.total_wires()) + 1, 0);
  std::int64_t depth = 0;
  for (const Gate& g : c.gates) {
    std::int64_t l = layer[g.target];
    for (const auto& ctl : g.controls) l = std::max(l, layer[ctl.wire]);
    ++l;
    layer[g.target] = l;
    for (const auto& ctl : g.controls) layer[ctl.wire] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

std::int64_t lowered_size(const Circuit& c) {
  std::int64_t total = 0;
  for (const Gate& g : c.gates) {
    total += std::max<std::int64_t>(1, 2 * static_cast<std::int64_t>(g.controls.size()) - 1);
  }
  return total;
}

std::string serialize(const Circuit& c) {
  std::string out = "{\"wires\":" + std::to_string(c.wires) + ",\"ancillas\":" + std::to_string(c.ancillas);
  if (!c.anchors.empty()) {
    out += ",\"anchors\":[";
    for (std::size_t i = 0; i < c.anchors.size(); ++i) {
      const Anchor& a = c.anchors[i];
      if (i) out += ",";
      out += "{\"wire\":" + std::to_string(a.wire) + ",\"proc\":" + nlohmann::json(a.proc).dump() +
             ",\"size\":" + std::to_string(a.size) + "}";
    }
    out += "]";
  }
  out += ",\"gates\":[";
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    out += i ? ",\n" : "\n";
    out += "{\"g\":\"";
    out += gate_name(g.kind);
    out += "\"";
    if (g.kind == GateName::Ry || g.kind == GateName::Ph) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", g.angle);
      out += ",\"theta\":";
      out += buf;
    }
    out += ",\"t\":" + std::to_string(g.target) + ",\"c\":[";
    for (std::size_t k = 0; k < g.controls.size(); ++k) {
      if (k) out += ",";
      out += "[" + std::to_string(g.controls[k].wire) + "," + std::to_string(g.controls[k].polarity) + "]";
    }
    out += "]}";
  }
  out += c.gates.empty() ? "]}" : "\n]}";
  return out;
}

Circuit deserialize(const std::string& text) {
  Circuit c;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw CircuitError("circuit must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key != "wires" && key != "ancillas" && key != "anchors" && key != "gates") {
        throw CircuitError("unknown field '" + key + "'");
      }
    }
    c.wires = j.at("wires").get<int>();
    c.ancillas = j.at("ancillas").get<int>();
    if (j.contains("anchors")) {
      for (const auto& a : j.at("anchors")) {
        c.anchors.push_back({a.at("wire").get<int>(), a.at("proc").get<std::string>(), a.at("size").get<int>()});
      }
    }
    for (const auto& jg : j.at("gates")) {
      const auto name = jg.at("g").get<std::string>();
      Gate g;
      if (name == "NOT") {
        g.kind = GateName::Not;
      } else if (name == "H") {
        g.kind = GateName::H;
      } else if (name == "RY") {
        g.kind = GateName::Ry;
      } else if (name == "PH") {
        g.kind = GateName::Ph;
      } else {
        throw CircuitError("unknown gate '" + name + "'");
      }
      const bool angled = g.kind == GateName::Ry || g.kind == GateName::Ph;
      if (angled != jg.contains("theta")) {
        throw CircuitError(angled ? "gate " + name + " needs theta" : "gate " + name + " takes no theta");
      }
      if (angled) g.angle = jg.at("theta").get<double>();
      g.target = jg.at("t").get<int>();
      for (const auto& ctl : jg.at("c")) {
        if (!ctl.is_array() || ctl.size() != 2) throw CircuitError("control must be [wire, polarity]");
        g.controls.push_back({ctl[0].get<int>(), ctl[1].get<int>()});
      }
      c.gates.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw CircuitError(std::string("malformed circuit: ") + e.what());
  }
  c.validate();
  return c;
}

namespace {

using Transpositions = std::vector<std::pair<int, int>>;

// Writes each nontrivial cycle (c0 ... c_{L-1}) as the product of the
// reflections i -> -i and then i -> 1 - i (indices mod L).
std::pair<Transpositions, Transpositions> split_route(const WireRoute& route) {
  std::set<int> sources;
  std::set<int> targets;
  for (const auto& [from, to] : route) {
    sources.insert(from);
    targets.insert(to);
  }
  if (sources != targets || targets.size() != route.size()) throw CircuitError("route is not a permutation");
  Transpositions first;
  Transpositions second;
  std::set<int> seen;
  for (const auto& [start, unused] : route) {
    if (seen.count(start)) continue;
    std::vector<int> cycle;
    for (int w = start; !seen.count(w); w = route.at(w)) {
      seen.insert(w);
      cycle.push_back(w);
    }
    const int len = static_cast<int>(cycle.size());
    for (int i = 0; i < len; ++i) {
      const int a = (len - i) % len;
      if (i < a) first.emplace_back(cycle[i], cycle[a]);
      const int b = ((1 - i) % len + len) % len;
      if (i < b) second.emplace_back(cycle[i], cycle[b]);
    }
  }
  return {first, second};
}

}  // namespace

int permutation_scratch(const WireRoute& route) {
  const auto [first, second] = split_route(route);
  const std::size_t copies = std::max(first.size(), second.size());
  return copies == 0 ? 0 : static_cast<int>(copies) - 1;
}

void append_controlled_permutation(std::vector<Gate>& out, const WireRoute& route, Control control,
                                   const std::vector<int>& scratch) {
  const auto [first, second] = split_route(route);
  const std::size_t copies = std::max(first.size(), second.size());
  if (copies == 0) return;
  if (scratch.size() + 1 < copies) throw CircuitError("not enough scratch wires for the permutation");
  if (route.count(control.wire)) throw CircuitError("permutation control lies on a permuted wire");
  for (int s : scratch) {
    if (route.count(s) || s == control.wire) throw CircuitError("scratch wire overlaps the permutation");
  }

  std::vector<int> holders{control.wire};
  std::vector<Gate> fanout;
  while (holders.size() < copies) {
    const std::size_t current = holders.size();
    for (std::size_t h = 0; h < current && holders.size() < copies; ++h) {
      const int s = scratch[holders.size() - 1];
      fanout.push_back(make_gate(GateName::Not, 0, s, {{holders[h], 1}}));
      holders.push_back(s);
    }
  }
  out.insert(out.end(), fanout.begin(), fanout.end());
  for (const Transpositions* round : {&first, &second}) {
    for (const auto& [a, b] : *round) out.push_back(make_gate(GateName::Not, 0, a, {{b, 1}}));
    for (std::size_t i = 0; i < round->size(); ++i) {
      const auto [a, b] = (*round)[i];
      out.push_back(make_gate(GateName::Not, 0, b, {{holders[i], control.polarity}, {a, 1}}));
    }
    for (const auto& [a, b] : *round) out.push_back(make_gate(GateName::Not, 0, a, {{b, 1}}));
  }
  out.insert(out.end(), fanout.rbegin(), fanout.rend());
}

Circuit controlled_permutation(const std::vector<int>& perm, Control control) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> hit(static_cast<std::size_t>(n) + 1, false);
  for (int v : perm) {
    if (v < 1 || v > n || hit[v]) throw CircuitError("not a permutation of 1..n");
    hit[v] = true;
  }
  if (control.wire < 1 || control.wire <= n) throw CircuitError("control wire must lie outside 1..n");
  if (control.polarity != 0 && control.polarity != 1) throw CircuitError("polarity must be 0 or 1");
  WireRoute route;
  for (int i = 0; i < n; ++i) route[i + 1] = perm[i];
  Circuit c;
  c.wires = std::max(n, control.wire);
  c.ancillas = permutation_scratch(route);
  std::vector<int> scratch;
  for (int k = 1; k <= c.ancillas; ++k) scratch.push_back(c.wires + k);
  append_controlled_permutation(c.gates, route, control, scratch);
  return c;
}

}  // namespace pbp
