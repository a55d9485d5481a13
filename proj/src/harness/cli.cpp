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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pbp/analysis.hpp"
#include "pbp/circuit.hpp"
#include "pbp/eval.hpp"
#include "pbp/frontend.hpp"
#include "pbp/harness.hpp"

namespace pbp {
namespace {

struct Source {
  std::string file;
  std::string builtin;

  void attach(CLI::App* cmd) {
    cmd->add_option("file", file, "Program source file");
    cmd->add_option("--builtin", builtin, "Built-in example id (pairs, qft, rec, add, sumR, chainedK)");
  }

  std::string id() const {
    if (!builtin.empty()) return builtin;
    const auto slash = file.find_last_of('/');
    std::string base = slash == std::string::npos ? file : file.substr(slash + 1);
    if (const auto dot = base.rfind('.'); dot != std::string::npos && dot > 0) base.resize(dot);
    return base;
  }

  Program load() const {
    if (file.empty() == builtin.empty()) throw CLI::ValidationError("give either a program file or --builtin");
    return builtin.empty() ? load_program_file(file) : builtin_example(builtin);
  }
};

std::string bits_of(std::uint64_t index, int n) {
  std::string s(n, '0');
  for (int w = 1; w <= n; ++w) {
    if ((index >> (n - w)) & 1) s[w - 1] = '1';
  }
  return s;
}

void print_state(std::ostream& out, const StateVector& s) {
  char buf[96];
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (std::abs(s[i]) < 1e-12) continue;
    std::snprintf(buf, sizeof buf, "  %+.12f %+.12fi", s[i].real(), s[i].imag());
    out << "|" << bits_of(i, s.num_qubits()) << ">" << buf << "\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compiler and test harness for quantum programs with recursive procedures and qcase"};
  app.name("pbpc");
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = kDefaultSeed;
  bool json = false;
  app.add_option("--seed", seed, "Seed for random input states")->capture_default_str();
  app.add_flag("--json", json, "Machine-readable output");

  Source src;
  int n = -1;
  std::string strategy_text = "merge";
  std::string state_text;
  auto add_strategy = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", strategy_text, "merge, sequential or swap")
        ->check(CLI::IsMember({"merge", "sequential", "swap"}))
        ->capture_default_str();
  };

  CLI::App* check = app.add_subcommand("check", "Classify a program (exit 0 PBP, 2 WF and WIDTH<=1 only, 3 otherwise)");
  src.attach(check);

  CLI::App* run = app.add_subcommand("run", "Run the interpreter on a state");
  src.attach(run);
  run->add_option("--state", state_text, "Bitstring or JSON array of [re, im] pairs");
  run->add_option("--n", n, "Qubit count; the input is |0...0> when --state is absent")->check(CLI::Range(0, 24));

  CLI::App* comp = app.add_subcommand("compile", "Compile a program into a circuit");
  src.attach(comp);
  std::string out_path;
  bool stats = false;
  comp->add_option("--n", n, "Number of input wires")->required()->check(CLI::Range(0, 1 << 20));
  add_strategy(comp);
  comp->add_option("--out", out_path, "Write the circuit JSON here instead of stdout");
  comp->add_flag("--stats", stats, "Print circuit statistics as JSON");

  CLI::App* sim = app.add_subcommand("simulate", "Simulate a circuit file with ancillas in |0>");
  std::string circuit_path;
  sim->add_option("circuit", circuit_path, "Circuit JSON file")->required();
  sim->add_option("--state", state_text, "Input over the circuit's input wires")->required();

  CLI::App* ver = app.add_subcommand("verify", "Compare the compiled circuit with the interpreter");
  src.attach(ver);
  int trials = 20;
  double tol = 1e-9;
  ver->add_option("--n", n, "Number of input wires")->required()->check(CLI::Range(0, 24));
  add_strategy(ver);
  ver->add_option("--trials", trials, "Random input states")->capture_default_str()->check(CLI::NonNegativeNumber);
  ver->add_option("--tol", tol, "Largest accepted deviation")->capture_default_str()->check(CLI::NonNegativeNumber);

  CLI::App* bench = app.add_subcommand("bench", "Compile across sizes and fit the size exponent");
  src.attach(bench);
  std::string range = "8:64:8";
  bool count_only = false, timing = false;
  int threads = 0;
  std::int64_t budget = BenchOptions{}.materialize_budget;
  bench->add_option("--n", range, "Sizes as a:b:step")->capture_default_str();
  add_strategy(bench);
  bench->add_flag("--count", count_only, "Count sequential circuits instead of building them");
  bench->add_option("--budget", budget, "Largest sequential circuit to build")->capture_default_str();
  bench->add_option("--threads", threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  bench->add_flag("--timing", timing, "Report wall-clock seconds per size");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "pbpc: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (check->parsed()) {
      const ClassificationReport r = classify_program(src.load());
      out << (json ? r.to_json() : r.to_table()) << (json ? "\n" : "");
      return r.exit_code();
    }
    if (run->parsed()) {
      const Program p = src.load();
      StateVector input;
      if (!state_text.empty()) {
        input = parse_state(state_text, n);
      } else if (n >= 0) {
        input = StateVector(n);
      } else {
        throw CLI::ValidationError("run needs --state or --n");
      }
      const RunResult r = run_program(p, input);
      if (json) {
        out << "{\"outcome\":\"" << outcome_name(r.outcome) << "\",\"time\":" << r.time
            << ",\"state\":" << state_to_json(r.state) << "}\n";
      } else {
        out << "outcome: " << outcome_name(r.outcome) << "\ntime: " << r.time << "\n";
        print_state(out, r.state);
      }
      return r.outcome == Outcome::Done ? 0 : kExitRun;
    }
    if (comp->parsed()) {
      CompileOptions opts;
      opts.strategy = parse_strategy(strategy_text);
      const CompileOutput c = compile(src.load(), n, opts);
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot write " + out_path);
        f << serialize(c.circuit) << "\n";
      } else if (!stats) {
        out << serialize(c.circuit) << "\n";
      }
      if (stats) out << c.stats_json() << "\n";
      return 0;
    }
    if (sim->parsed()) {
      const Circuit c = deserialize(read_file(circuit_path));
      const StateVector input = parse_state(state_text, c.wires);
      const Simulation s = simulate(c, {input});
      if (json) {
        char mass[40];
        std::snprintf(mass, sizeof mass, "%.17g", s.ancilla_mass);
        out << "{\"ancilla_mass\":" << mass << ",\"state\":" << state_to_json(s.outputs[0]) << "}\n";
      } else {
        out << "ancilla mass: " << s.ancilla_mass << "\n";
        print_state(out, s.outputs[0]);
      }
      return 0;
    }
    if (ver->parsed()) {
      VerifyOptions opts;
      opts.strategy = parse_strategy(strategy_text);
      opts.trials = trials;
      opts.tol = tol;
      opts.seed = seed;
      const VerifyReport r = verify_equivalence(src.load(), n, opts, src.id());
      if (json) {
        out << r.to_json() << "\n";
      } else {
        out << (r.pass ? "PASS" : "FAIL") << " " << r.program << " n=" << r.n << " strategy=" << strategy_name(r.strategy)
            << " inputs=" << r.trials + r.basis_states << " max_deviation=" << r.max_deviation << " tol=" << r.tol
            << "\n";
      }
      return r.pass ? 0 : kExitVerify;
    }
    if (bench->parsed()) {
      BenchOptions opts;
      opts.count_only = count_only;
      opts.timing = timing;
      opts.threads = threads;
      opts.materialize_budget = budget;
      const BenchReport r =
          bench_scaling(src.load(), parse_strategy(strategy_text), parse_range(range), opts, src.id());
      out << (json ? r.to_json() + "\n" : r.to_csv());
      if (!json) err << "slope " << r.fit.slope << " residual " << r.fit.residual << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    err << "pbpc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CompileError& e) {
    err << "pbpc: compile error: " << e.what() << "\n";
    return kExitCompile;
  } catch (const RunError& e) {
    err << "pbpc: " << e.what() << "\n";
    return kExitRun;
  } catch (const Error& e) {
    err << "pbpc: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "pbpc: internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace pbp
