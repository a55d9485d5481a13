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

#include "pbp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "pbp/analysis.hpp"
#include "pbp/eval.hpp"
#include "pbp/frontend.hpp"

namespace pbp {
namespace {

constexpr std::string_view kPairs = R"(// Flips the last qubit iff the other qubits read as a word of (00|11)*.
decl pairs(qs) {
  if |qs| >= 2 then
    qcase qs[1, 2] of {
      00 -> call pairs(qs - [1, 2]);
      01 -> skip;
      10 -> skip;
      11 -> call pairs(qs - [1, 2]);
    }
  else qs[1] *= NOT;
}
:: call pairs(qs);
)";

constexpr std::string_view kQft = R"(// Quantum Fourier transform.
decl qft(qs) {
  qs[1] *= H;
  call rot(qs);
  call shift(qs);
  call qft(qs - [-1]);
},
decl rot(qs) {
  if |qs| > 1 then
    CPHASE(qs[-1], qs[1], |qs|)
    call rot(qs - [-1]);
  else skip;
},
decl shift(qs) {
  if |qs| > 1 then
    SWAP(qs[1], qs[-1])
    call shift(qs - [-1]);
  else skip;
}
:: call qft(qs);
)";

constexpr std::string_view kRec = R"(decl rec(qs) {
  if |qs| > 2 then
    qcase qs[1] of {
      0 -> call rec(qs - [1]);
      1 -> qcase qs[2] of {
             0 -> skip;
             1 -> call rec(qs - [1, 2]);
           }
    }
  else qs[1] *= H;
}
:: call rec(qs);
)";

constexpr std::string_view kAdd = R"(// Ripple-carry adder on |a_m b_m ... a_1 b_1 0^m c_in>.
decl fullAdder(qs) {
  if |qs| > 3 then
    TOF(qs[1], qs[2], qs[-2])
    CNOT(qs[1], qs[2])
    TOF(qs[2], qs[-1], qs[-2])
    CNOT(qs[2], qs[-1])
    CNOT(qs[1], qs[2])
    call fullAdder(qs - [1, 2, -1]);
  else skip;
}
:: call fullAdder(qs);
)";

// Parses the k of "name(k)" or "namek"; 0 when id does not have that shape.
int parameter_of(std::string_view id, std::string_view name) {
  if (id.substr(0, name.size()) != name) return 0;
  std::string_view rest = id.substr(name.size());
  if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
  if (rest.empty()) return 0;
  int value = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || value < 1) return 0;
  return value;
}

std::string counter_name(int i) {
  static const char* const kWords[] = {"zero", "one", "two", "three", "four", "five",
                                       "six",  "seven", "eight", "nine", "ten"};
  if (i <= 10) return kWords[i];
  return "count" + std::to_string(i);
}

std::string sum_source(int r) {
  std::ostringstream os;
  os << "// Flips the last qubit iff exactly " << r << " of the others are set.\n";
  for (int i = 0; i < r; ++i) {
    const std::string self = counter_name(i);
    os << "decl " << self << "(qs) { qcase qs[1] of { 0 -> call " << self << "(qs - [1]); 1 -> call "
       << counter_name(i + 1) << "(qs - [1]); } },\n";
  }
  const std::string last = counter_name(r);
  os << "decl " << last << "(qs) {\n"
     << "  if |qs| = 1 then\n"
     << "    call flip(qs);\n"
     << "  else\n"
     << "    qcase qs[1] of { 0 -> call " << last << "(qs - [1]); 1 -> skip; }\n"
     << "},\n"
     << "decl flip(qs) { qs[-1] *= NOT; }\n"
     << ":: call zero(qs);\n";
  return os.str();
}

std::string chained_source(int k) {
  std::ostringstream os;
  os << "// Flips the last qubit iff the others contain (0011)^" << k << " as a subsequence.\n";
  for (int i = 1; i <= k; ++i) {
    const std::string s = std::to_string(i);
    const std::string next = i < k ? "a" + std::to_string(i + 1) : "flip";
    os << "decl a" << s << "(qs) { qcase qs[1] of { 0 -> call b" << s << "(qs - [1]); 1 -> call a" << s
       << "(qs - [1]); } },\n";
    os << "decl b" << s << "(qs) { qcase qs[1] of { 0 -> call c" << s << "(qs - [1]); 1 -> call b" << s
       << "(qs - [1]); } },\n";
    os << "decl c" << s << "(qs) { qcase qs[1] of { 0 -> call c" << s << "(qs - [1]); 1 -> call d" << s
       << "(qs - [1]); } },\n";
    os << "decl d" << s << "(qs) { qcase qs[1] of { 0 -> call d" << s << "(qs - [1]); 1 -> call " << next
       << "(qs - [1]); } },\n";
  }
  os << "decl flip(qs) { qs[-1] *= NOT; }\n"
     << ":: call a1(qs);\n";
  return os.str();
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

}  // namespace

std::string builtin_source(std::string_view id) {
  if (id == "pairs") return std::string(kPairs);
  if (id == "qft") return std::string(kQft);
  if (id == "rec") return std::string(kRec);
  if (id == "add") return std::string(kAdd);
  if (const int k = parameter_of(id, "chained")) return chained_source(k);
  if (const int r = parameter_of(id, "sum")) return sum_source(r);
  throw HarnessError("unknown built-in example '" + std::string(id) + "'");
}

Program builtin_example(std::string_view id) { return load_program(builtin_source(id)); }

std::vector<std::string> builtin_ids() {
  return {"pairs", "qft", "rec", "add", "sum2", "sum3", "chained1", "chained2"};
}

bool builtin_valid_size(std::string_view id, int n) {
  if (id == "add") return n % 3 == 1;
  return n >= 1;
}

std::vector<Strategy> legal_strategies(const Program& p) {
  const ClassificationReport c = classify_program(p);
  if (!c.wf) return {};
  if (!c.width_le_1) return {Strategy::Sequential};
  return {Strategy::Merge, Strategy::Swap, Strategy::Sequential};
}

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<Amp> amps(std::size_t{1} << n);
  double norm2 = 0;
  for (Amp& a : amps) {
    const double re = normal(rng);
    const double im = normal(rng);
    a = Amp(re, im);
    norm2 += re * re + im * im;
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Amp& a : amps) a *= scale;
  return StateVector(n, std::move(amps));
}

StateVector parse_state(std::string_view text, int expected_n) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw HarnessError("empty state");
  StateVector s;
  if (text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw HarnessError(std::string("state is not valid JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw HarnessError("state must be a non-empty array of [re, im] pairs");
    const std::size_t dim = j.size();
    if ((dim & (dim - 1)) != 0) throw HarnessError("state dimension " + std::to_string(dim) + " is not a power of 2");
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    std::vector<Amp> amps;
    amps.reserve(dim);
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw HarnessError("every amplitude must be a [re, im] pair of numbers");
      }
      amps.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    s = StateVector(n, std::move(amps));
    if (std::abs(s.norm() - 1.0) > 1e-9) throw HarnessError("state is not normalized");
  } else {
    const auto last = text.find_last_not_of(" \t\r\n");
    const std::string_view bits = text.substr(first, last - first + 1);
    if (bits.find_first_not_of("01") != std::string_view::npos) {
      throw HarnessError("state must be a bitstring or a JSON array");
    }
    s = StateVector::from_bits(bits);
  }
  if (expected_n >= 0 && s.num_qubits() != expected_n) {
    throw HarnessError("state has " + std::to_string(s.num_qubits()) + " qubits, expected " +
                       std::to_string(expected_n));
  }
  return s;
}

std::string state_to_json(const StateVector& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (i) out += ",";
    out += "[" + fmt_double(s[i].real()) + "," + fmt_double(s[i].imag()) + "]";
  }
  return out + "]";
}

std::string VerifyReport::to_json() const {
  std::ostringstream os;
  os << "{\"program\":" << json_string(program) << ",\"strategy\":" << json_string(strategy_name(strategy))
     << ",\"n\":" << n << ",\"trials\":" << trials << ",\"basis_states\":" << basis_states
     << ",\"max_deviation\":" << fmt_double(max_deviation) << ",\"tol\":" << fmt_double(tol)
     << ",\"pass\":" << (pass ? "true" : "false") << ",\"size\":" << stats.size << ",\"depth\":" << stats.depth
     << ",\"ancillas\":" << stats.ancilla_count << "}";
  return os.str();
}

VerifyReport verify_equivalence(const Program& p, int n, const VerifyOptions& opts, std::string_view program_id) {
  if (n < 0 || n > 24) throw HarnessError("verify supports 0 <= n <= 24");
  CompileOptions copts;
  copts.strategy = opts.strategy;
  const CompileOutput out = compile(p, n, copts);

  std::mt19937_64 rng(opts.seed);
  std::vector<StateVector> inputs;
  for (int t = 0; t < opts.trials; ++t) inputs.push_back(random_state(n, rng));
  int basis = 0;
  if (n < 31 && (std::int64_t{1} << n) <= opts.exhaustive_limit) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) inputs.push_back(StateVector::basis(n, x));
    basis = 1 << n;
  }

  const Simulation sim = simulate(out.circuit, inputs);
  double worst = std::sqrt(sim.ancilla_mass);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const RunResult r = run_program(p, inputs[i]);
    if (r.outcome != Outcome::Done) {
      throw RunError("interpreter " + std::string(outcome_name(r.outcome)) + " at size " + std::to_string(n));
    }
    worst = std::max(worst, sim.outputs[i].max_abs_diff(r.state));
  }

  VerifyReport rep;
  rep.program = std::string(program_id);
  rep.strategy = opts.strategy;
  rep.n = n;
  rep.trials = opts.trials;
  rep.basis_states = basis;
  rep.max_deviation = worst;
  rep.tol = opts.tol;
  rep.pass = worst <= opts.tol;
  rep.stats = out.stats;
  return rep;
}

Fit fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw HarnessError("fit needs at least 3 points");
  double sx = 0, sy = 0;
  for (const auto& [n, size] : points) {
    if (!(n > 0) || !(size > 0)) throw HarnessError("fit needs positive points");
    sx += std::log(n);
    sy += std::log(size);
  }
  const double m = static_cast<double>(points.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& [n, size] : points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(size) - my);
  }
  if (sxx <= 0) throw HarnessError("fit needs at least two distinct n");
  Fit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (const auto& [n, size] : points) {
    const double e = std::log(size) - (f.intercept + f.slope * std::log(n));
    ss += e * e;
  }
  f.residual = std::sqrt(ss / m);
  return f;
}

std::string BenchReport::to_csv() const {
  std::ostringstream os;
  os << "n,size,depth,time,ancillas" << (timing ? ",seconds" : "") << "\n";
  for (const BenchRow& r : rows) {
    os << r.n << "," << r.size << ",";
    if (r.depth >= 0) os << r.depth;
    os << "," << r.time << "," << r.ancillas;
    if (timing) os << "," << fmt_double(r.seconds);
    os << "\n";
  }
  return os.str();
}

std::string BenchReport::to_json() const {
  std::ostringstream os;
  os << "{\"program\":" << json_string(program) << ",\"strategy\":" << json_string(strategy_name(strategy))
     << ",\"rows\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BenchRow& r = rows[i];
    os << (i ? "," : "") << "\n  {\"n\":" << r.n << ",\"size\":" << r.size << ",\"depth\":";
    if (r.depth >= 0) {
      os << r.depth;
    } else {
      os << "null";
    }
    os << ",\"time\":" << r.time << ",\"ancillas\":" << r.ancillas << ",\"counted\":" << (r.counted ? "true" : "false");
    if (timing) os << ",\"seconds\":" << fmt_double(r.seconds);
    os << "}";
  }
  os << (rows.empty() ? "" : "\n") << "],\"skipped\":[";
  for (std::size_t i = 0; i < skipped.size(); ++i) os << (i ? "," : "") << skipped[i];
  os << "],\"slope\":" << fmt_double(fit.slope) << ",\"intercept\":" << fmt_double(fit.intercept)
     << ",\"residual\":" << fmt_double(fit.residual) << "}";
  return os.str();
}

BenchReport bench_scaling(const Program& p, Strategy strategy, std::vector<int> ns, const BenchOptions& opts,
                          std::string_view program_id) {
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (!ns.empty() && ns.front() < 1) throw HarnessError("bench sizes must be positive");

  struct Slot {
    bool skipped = false;
    BenchRow row;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(ns.size());

  auto work = [&](std::size_t i) {
    const int n = ns[i];
    Slot& slot = slots[i];
    if (!builtin_valid_size(program_id, n)) {
      slot.skipped = true;
      return;
    }
    const StaticResult walk = static_walk(p, n);
    if (walk.outcome == Outcome::Error) {
      slot.skipped = true;
      return;
    }
    if (walk.outcome == Outcome::Diverged) throw CompileError("program diverges at size " + std::to_string(n));
    BenchRow& row = slot.row;
    row.n = n;
    row.time = walk.time;
    const auto start = std::chrono::steady_clock::now();
    bool count = false;
    if (strategy == Strategy::Sequential) {
      const BaselineCount bc = count_baseline(p, n);
      count = opts.count_only || bc.gates > opts.materialize_budget;
      if (count) {
        row.size = bc.size;
        row.counted = true;
      }
    }
    if (!count) {
      CompileOptions copts;
      copts.strategy = strategy;
      copts.gate_budget = std::max<std::int64_t>(opts.materialize_budget, 1);
      const CompileOutput out = compile(p, n, copts);
      row.size = out.stats.size;
      row.depth = out.stats.depth;
      row.ancillas = out.stats.ancilla_count;
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, static_cast<int>(ns.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ns.size(); i = next++) {
      try {
        work(i);
      } catch (...) {
        slots[i].error = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  BenchReport rep;
  rep.program = std::string(program_id);
  rep.strategy = strategy;
  rep.timing = opts.timing;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (slots[i].error) std::rethrow_exception(slots[i].error);
    if (slots[i].skipped) {
      rep.skipped.push_back(ns[i]);
    } else {
      rep.rows.push_back(std::move(slots[i].row));
    }
  }
  rep.fit.slope = rep.fit.intercept = rep.fit.residual = std::numeric_limits<double>::quiet_NaN();
  // Top half of the rows, widened to the last three when that is too few.
  if (rep.rows.size() >= 3) {
    const std::size_t first = std::min(rep.rows.size() / 2, rep.rows.size() - 3);
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = first; i < rep.rows.size(); ++i) {
      points.emplace_back(rep.rows[i].n, rep.rows[i].size.convert_to<double>());
    }
    bool positive = std::all_of(points.begin(), points.end(), [](const auto& q) { return q.second > 0; });
    if (positive) rep.fit = fit_exponent(points);
  }
  return rep;
}

std::vector<int> parse_range(std::string_view text) {
  std::vector<long> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = text.find(':', pos);
    const std::string_view piece = text.substr(pos, colon == std::string_view::npos ? text.npos : colon - pos);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw HarnessError("bad size range '" + std::string(text) + "'");
    }
    parts.push_back(v);
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() > 3) throw HarnessError("bad size range '" + std::string(text) + "'");
  const long a = parts[0];
  const long b = parts.size() > 1 ? parts[1] : a;
  const long step = parts.size() > 2 ? parts[2] : 1;
  if (a < 1 || b < a || step < 1 || b > 1'000'000) throw HarnessError("bad size range '" + std::string(text) + "'");
  std::vector<int> ns;
  for (long n = a; n <= b; n += step) ns.push_back(static_cast<int>(n));
  return ns;
}

}  // namespace pbp
