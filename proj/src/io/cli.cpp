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


#include "mstage/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mstage/io.hpp"
#include "mstage/oracle.hpp"

namespace mstage {

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string Num(const std::optional<double>& v) { return v ? Num(*v) : std::string(); }

int Size(const AnyInstance& instance) {
  return std::visit(
      [](const auto& inst) {
        if constexpr (std::is_same_v<std::decay_t<decltype(inst)>, MsScInstance>) {
          return inst.m;
        } else {
          return inst.n;
        }
      },
      instance);
}

int Horizon(const AnyInstance& instance) {
  return std::visit([](const auto& inst) { return inst.T(); }, instance);
}

constexpr double kBoundSlack = 1e-6;

bool WithinBound(const SolveReport& r) {
  auto ok = [&](const std::optional<double>& ratio) {
    return !ratio || *ratio <= r.bound + kBoundSlack;
  };
  return ok(r.ratio_vs_lp) && ok(r.ratio_vs_oracle);
}

std::string CsvRow(const InstanceFile& file, const SolveReport& r) {
  std::string flags;
  for (const std::string& f : r.info.flags) flags += (flags.empty() ? "" : ";") + f;
  std::ostringstream row;
  row << file.id << ',' << r.problem << ',' << r.info.algorithm << ',' << r.info.mode << ','
      << Size(file.instance) << ',' << Horizon(file.instance) << ','
      << Num(r.info.lp_value) << ',' << Num(r.cost.Total()) << ',' << Num(r.cost.step) << ','
      << Num(r.cost.penalty) << ',' << Num(r.cost.transition) << ','
      << Num(r.ratio_vs_lp) << ',' << Num(r.oracle_value) << ',' << Num(r.ratio_vs_oracle)
      << ',' << Num(r.bound) << ',' << (WithinBound(r) ? 1 : 0) << ',' << r.info.path << ','
      << flags << ',' << Num(r.wall_ms);
  return row.str();
}

std::vector<RoundingMode> ModesFor(Problem problem) {
  if (problem == Problem::kPcst || problem == Problem::kPctsp) {
    return {RoundingMode::kFixed, RoundingMode::kDerandomized};
  }
  return {RoundingMode::kFixed};
}

std::string BenchOne(const std::string& path, bool with_oracle) {
  InstanceFile file = ReadInstanceFile(path);
  if (file.id.empty()) file.id = std::filesystem::path(path).stem().string();
  std::optional<double> optimum;
  if (with_oracle) optimum = SolveOracle(file).cost.Total();
  std::string rows;
  for (RoundingMode mode : ModesFor(file.problem)) {
    SolveRequest request;
    request.mode = mode;
    SolveReport r = Solve(file, request);
    if (optimum) {
      r.oracle_value = optimum;
      r.ratio_vs_oracle = Ratio(r.cost.Total(), *optimum);
    }
    rows += CsvRow(file, r) + "\n";
  }
  return rows;
}

}  // namespace

std::string RunBench(const BenchOptions& options) {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(options.corpus)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> rows(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < files.size(); k = next++) {
      try {
        rows[k] = BenchOne(files[k], options.with_oracle);
      } catch (const std::exception& e) {
        errors[k] = files[k] + ": " + e.what();
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const std::string& e : errors) {
    if (!e.empty()) throw SolverError(e);
  }
  std::string csv = std::string(kBenchHeader) + "\n";
  for (const std::string& r : rows) csv += r;
  return csv;
}

namespace {

struct Args {
  std::string problem;
  std::string mode = "fixed";
  std::string matching = "exact";
  std::string in;
  std::string out;
  bool with_oracle = false;
  int n = 5;
  int T = 3;
  std::uint64_t seed = 1;
  double volatility = 0.3;
  BenchOptions bench;
};

void Emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    WriteTextFile(out, text);
  }
}

InstanceFile Load(const Args& a) {
  InstanceFile file = ReadInstanceFile(a.in);
  if (file.id.empty()) file.id = std::filesystem::path(a.in).stem().string();
  if (!a.problem.empty() && ParseProblem(a.problem) != file.problem) {
    throw ValidationError("/problem", "file holds '" + std::string(ToString(file.problem)) +
                                          "', --problem asked for '" + a.problem + "'");
  }
  return file;
}

}  // namespace

int RunCli(int argc, char** argv) {
  CLI::App app{"Multistage LP-rounding solvers"};
  app.require_subcommand(1);
  Args a;
  const std::vector<std::string> problems{"mincut", "vertexcover", "setcover", "pcst", "pctsp"};

  auto* solve = app.add_subcommand("solve", "Solve an instance and write a report");
  solve->add_option("--problem", a.problem, "Expected problem tag")
      ->check(CLI::IsMember(problems));
  solve->add_option("--mode", a.mode, "fixed or derandomized")
      ->check(CLI::IsMember({"fixed", "derandomized"}));
  solve->add_option("--matching", a.matching, "exact or greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));
  solve->add_option("--in", a.in, "Instance JSON")->required();
  solve->add_option("--out", a.out, "Report JSON ('-' for stdout)");
  solve->add_flag("--with-oracle", a.with_oracle, "Also report the exact optimum");

  auto* oracle = app.add_subcommand("oracle", "Exact optimum by enumeration");
  oracle->add_option("--problem", a.problem, "Expected problem tag")
      ->check(CLI::IsMember(problems));
  oracle->add_option("--mode", a.mode, "Accepted for symmetry with solve");
  oracle->add_option("--in", a.in, "Instance JSON")->required();
  oracle->add_option("--out", a.out, "Report JSON ('-' for stdout)");

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--problem", a.problem, "Problem tag")
      ->required()
      ->check(CLI::IsMember(problems));
  gen->add_option("--n", a.n, "Vertices (sets and elements for setcover)")
      ->check(CLI::Range(2, 64));
  gen->add_option("--T", a.T, "Time horizon")->check(CLI::Range(1, 64));
  gen->add_option("--seed", a.seed, "RNG seed");
  gen->add_option("--volatility", a.volatility, "Step-to-step change in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--out", a.out, "Instance JSON ('-' for stdout)");

  auto* bench = app.add_subcommand("bench", "Solve a corpus and write a CSV");
  bench->add_option("--corpus", a.bench.corpus, "Directory of instance files")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench->add_option("--out", a.out, "CSV path ('-' for stdout)");
  bench->add_option("--jobs", a.bench.jobs, "Worker threads")->check(CLI::Range(1, 256));
  bool no_oracle = false;
  bench->add_flag("--no-oracle", no_oracle, "Skip the exact optimum columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*solve) {
      SolveRequest request;
      request.mode = a.mode == "derandomized" ? RoundingMode::kDerandomized
                                              : RoundingMode::kFixed;
      request.matching = a.matching == "greedy" ? MatchingMode::kGreedy : MatchingMode::kExact;
      request.with_oracle = a.with_oracle;
      Emit(a.out, ReportToJson(Solve(Load(a), request)));
    } else if (*oracle) {
      Emit(a.out, ReportToJson(SolveOracle(Load(a))));
    } else if (*gen) {
      Emit(a.out, SerializeInstance(
                      GenerateInstance(ParseProblem(a.problem), a.n, a.T, a.seed, a.volatility)));
    } else if (*bench) {
      a.bench.with_oracle = !no_oracle;
      Emit(a.out, RunBench(a.bench));
    }
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InstanceError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

int RunCli(const std::vector<std::string>& args) {
  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  for (std::string& s : storage) argv.push_back(s.data());
  return RunCli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace mstage
