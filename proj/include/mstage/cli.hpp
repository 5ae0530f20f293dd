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


#ifndef MSTAGE_CLI_HPP_
#define MSTAGE_CLI_HPP_

#include <string>
#include <vector>

namespace mstage {

// Exit codes of the command-line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

inline constexpr const char* kBenchHeader =
    "instance,problem,algorithm,mode,n,T,lp_value,cost,step_cost,penalty_cost,"
    "transition_cost,ratio_vs_lp,oracle_value,ratio_vs_oracle,bound,within_bound,"
    "path,flags,wall_ms";

struct BenchOptions {
  std::string corpus;
  int jobs = 1;
  bool with_oracle = true;
};

// Solves every *.json under the corpus (sorted by file name) with each
// applicable algorithm and mode. Returns the CSV text including the header.
std::string RunBench(const BenchOptions& options);

// Entry point of the mstage executable: solve, oracle, gen, bench.
int RunCli(int argc, char** argv);
int RunCli(const std::vector<std::string>& args);

}  // namespace mstage

#endif  // MSTAGE_CLI_HPP_
