// Copyright 2026 The mstage Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Thin binding: instances and reports cross the boundary as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "mstage/io.hpp"
#include "mstage/rounding.hpp"

namespace py = pybind11;

namespace mstage {
namespace {

RoundingMode ParseMode(const std::string& mode) {
  if (mode == "fixed") return RoundingMode::kFixed;
  if (mode == "derandomized") return RoundingMode::kDerandomized;
  throw std::invalid_argument("unknown mode '" + mode + "'");
}

MatchingMode ParseMatching(const std::string& matching) {
  if (matching == "exact") return MatchingMode::kExact;
  if (matching == "greedy") return MatchingMode::kGreedy;
  throw std::invalid_argument("unknown matching '" + matching + "'");
}

std::string SolveJson(const std::string& instance, const std::string& mode,
                      const std::string& matching, bool with_oracle) {
  SolveRequest request;
  request.mode = ParseMode(mode);
  request.matching = ParseMatching(matching);
  request.with_oracle = with_oracle;
  InstanceFile file = ParseInstance(instance);
  py::gil_scoped_release release;
  return ReportToJson(Solve(file, request));
}

std::string OracleJson(const std::string& instance) {
  InstanceFile file = ParseInstance(instance);
  py::gil_scoped_release release;
  return ReportToJson(SolveOracle(file));
}

std::string GenerateJson(const std::string& problem, int n, int T, std::uint64_t seed,
                         double volatility) {
  return SerializeInstance(GenerateInstance(ParseProblem(problem), n, T, seed, volatility));
}

std::vector<int> Round(const std::vector<double>& x, double alpha, double beta) {
  auto y = TwoThresholdRound(x, RoundingParams{alpha, beta});
  return {y.begin(), y.end()};
}

std::vector<double> Candidates(const std::vector<double>& values, double gamma, double kappa,
                               bool complete) {
  return CandidateAlphas(values, DerandomizationConfig{gamma, kappa},
                         complete ? CandidateRule::kComplete : CandidateRule::kBreakpoints);
}

}  // namespace
}  // namespace mstage

PYBIND11_MODULE(_mstage, m) {
  using namespace mstage;
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def("solve", &SolveJson, py::arg("instance"), py::arg("mode") = "fixed",
        py::arg("matching") = "exact", py::arg("with_oracle") = false,
        "Solve an instance given as JSON text; returns the report as JSON text.");
  m.def("oracle", &OracleJson, py::arg("instance"),
        "Exact optimum of a small instance; returns the report as JSON text.");
  m.def("generate", &GenerateJson, py::arg("problem"), py::arg("n"), py::arg("T"),
        py::arg("seed"), py::arg("volatility") = 0.3,
        "Random instance as JSON text.");
  m.def("two_threshold_round", &Round, py::arg("x"), py::arg("alpha"), py::arg("beta"));
  m.def("candidate_alphas", &Candidates, py::arg("values"), py::arg("gamma"),
        py::arg("kappa"), py::arg("complete") = false);
}
