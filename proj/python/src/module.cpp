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


#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "pbp/analysis.hpp"
#include "pbp/circuit.hpp"
#include "pbp/compiler.hpp"
#include "pbp/eval.hpp"
#include "pbp/frontend.hpp"
#include "pbp/harness.hpp"

namespace py = pybind11;

namespace {

using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

pbp::StateVector to_state(const ComplexArray& a) {
  if (a.ndim() != 1) throw py::value_error("state must be one-dimensional");
  const auto dim = static_cast<std::size_t>(a.shape(0));
  if (dim == 0 || (dim & (dim - 1)) != 0) throw py::value_error("state length must be a power of 2");
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return pbp::StateVector(n, std::vector<pbp::Amp>(a.data(), a.data() + dim));
}

ComplexArray to_array(const pbp::StateVector& s) {
  ComplexArray a(static_cast<py::ssize_t>(s.dim()));
  std::copy(s.amplitudes().begin(), s.amplitudes().end(), a.mutable_data());
  return a;
}

py::object parse_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

pbp::Strategy strategy(const std::string& name) { return pbp::parse_strategy(name); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parser, interpreter, classifier and circuit compiler for quantum programs with qcase and recursion";

  py::register_exception<pbp::Error>(m, "Error", PyExc_ValueError);

  py::class_<pbp::Program>(m, "Program")
      .def("__str__", [](const pbp::Program& p) { return pbp::pretty_print(p); })
      .def("__eq__", [](const pbp::Program& a, const pbp::Program& b) { return a == b; })
      .def_property_readonly("procedures", [](const pbp::Program& p) {
        std::vector<std::string> names;
        for (const auto& d : p.decls) names.push_back(d.name);
        return names;
      });

  m.def("load_program", [](const std::string& source) { return pbp::load_program(source); }, py::arg("source"),
        "Parse and desugar program source.");
  m.def("load_program_file", &pbp::load_program_file, py::arg("path"));
  m.def("builtin", [](const std::string& id) { return pbp::builtin_example(id); }, py::arg("id"),
        "Built-in example: pairs, qft, rec, add, sumR or chainedK.");
  m.def("builtin_source", [](const std::string& id) { return pbp::builtin_source(id); }, py::arg("id"));
  m.def("builtin_ids", &pbp::builtin_ids);

  m.def("classify", [](const pbp::Program& p) { return parse_json(pbp::classify_program(p).to_json()); },
        py::arg("program"), "Classification report as a dict.");
  m.def(
      "time_complexity",
      [](const pbp::Program& p, int n, bool brute_force) {
        const pbp::TimeReport r =
            pbp::time_complexity(p, n, brute_force ? pbp::TimeMethod::BruteForce : pbp::TimeMethod::Symbolic);
        if (r.outcome != pbp::Outcome::Done) {
          throw pbp::Error("program " + std::string(pbp::outcome_name(r.outcome)) + " at size " + std::to_string(n));
        }
        return r.time;
      },
      py::arg("program"), py::arg("n"), py::arg("brute_force") = false);

  m.def(
      "run",
      [](const pbp::Program& p, const ComplexArray& state) {
        pbp::RunResult r;
        const pbp::StateVector in = to_state(state);
        {
          py::gil_scoped_release release;
          r = pbp::run_program(p, in);
        }
        return py::make_tuple(std::string(pbp::outcome_name(r.outcome)), r.time, to_array(r.state));
      },
      py::arg("program"), py::arg("state"), "Run the interpreter; returns (outcome, time, state).");

  m.def(
      "compile",
      [](const pbp::Program& p, int n, const std::string& strat) {
        pbp::CompileOptions opts;
        opts.strategy = strategy(strat);
        pbp::CompileOutput out;
        {
          py::gil_scoped_release release;
          out = pbp::compile(p, n, opts);
        }
        py::dict d;
        d["circuit"] = pbp::serialize(out.circuit);
        d["stats"] = parse_json(out.stats_json());
        return d;
      },
      py::arg("program"), py::arg("n"), py::arg("strategy") = "merge",
      "Compile at n input wires; returns {'circuit': json text, 'stats': dict}.");

  m.def(
      "simulate",
      [](const std::string& circuit_json, const ComplexArray& state) {
        const pbp::Circuit c = pbp::deserialize(circuit_json);
        const pbp::StateVector in = to_state(state);
        if (in.num_qubits() != c.wires) throw py::value_error("state does not match the circuit's input wires");
        const pbp::Simulation s = pbp::simulate(c, {in});
        return py::make_tuple(to_array(s.outputs[0]), s.ancilla_mass);
      },
      py::arg("circuit"), py::arg("state"), "Simulate with ancillas in |0>; returns (state, ancilla_mass).");

  m.def(
      "verify",
      [](const pbp::Program& p, int n, const std::string& strat, int trials, double tol, std::uint64_t seed) {
        pbp::VerifyOptions opts;
        opts.strategy = strategy(strat);
        opts.trials = trials;
        opts.tol = tol;
        opts.seed = seed;
        pbp::VerifyReport r;
        {
          py::gil_scoped_release release;
          r = pbp::verify_equivalence(p, n, opts);
        }
        return parse_json(r.to_json());
      },
      py::arg("program"), py::arg("n"), py::arg("strategy") = "merge", py::arg("trials") = 20, py::arg("tol") = 1e-9,
      py::arg("seed") = pbp::kDefaultSeed);

  m.def(
      "bench",
      [](const pbp::Program& p, const std::vector<int>& ns, const std::string& strat, bool count_only,
         const std::string& id) {
        pbp::BenchOptions opts;
        opts.count_only = count_only;
        pbp::BenchReport r;
        {
          py::gil_scoped_release release;
          r = pbp::bench_scaling(p, strategy(strat), ns, opts, id);
        }
        return parse_json(r.to_json());
      },
      py::arg("program"), py::arg("ns"), py::arg("strategy") = "merge", py::arg("count_only") = false,
      py::arg("id") = "program", "Compile across sizes; returns the bench report as a dict.");

  m.def(
      "fit_exponent",
      [](const std::vector<std::pair<double, double>>& points) {
        const pbp::Fit f = pbp::fit_exponent(points);
        return py::make_tuple(f.slope, f.residual);
      },
      py::arg("points"), "Least squares slope and residual of log size against log n.");
}
