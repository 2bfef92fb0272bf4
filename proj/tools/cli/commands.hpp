// Copyright 2026 The Screening Contracts Authors.
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

// Subcommands of the screening tool. Each command writes its report to
// `out` and mirrors warnings to `err`; the return value is the exit code.

#ifndef SCREENING_CLI_COMMANDS_HPP_
#define SCREENING_CLI_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>

#include "cli/scenario_io.hpp"

namespace screening::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitNonConvergence = 2;
inline constexpr int kExitVerificationFailure = 3;

enum class Format { kJson, kCsv };

struct AnalyzeOptions {
  double tol = 1e-8;
  int max_iter = 20000;
};

struct OracleOptions {
  std::size_t grid_k = 50;
  bool mixtures = false;
  double tol = 1e-8;
  int max_iter = 20000;
};

struct SimulateOptions {
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  Format format = Format::kJson;
  unsigned threads = 1;
  double tol = 1e-8;
};

// Reports as JSON documents; each carries a "warnings" array.
Json analyze_report(const Scenario& sc, const AnalyzeOptions& opts);
Json oracle_report(const Scenario& sc, const OracleOptions& opts);
Json simulate_report(const Scenario& sc, const SimulationReport& sim, double tol);

// One header row and one row per expert.
void write_csv(const SimulationReport& sim, std::ostream& out);

// Exit code for a finished report: 2 if any Chebyshev result is uncertified.
int report_exit_code(const Json& report);

int cmd_analyze(const Scenario& sc, const AnalyzeOptions& opts, std::ostream& out,
                std::ostream& err);
int cmd_oracle(const Scenario& sc, const OracleOptions& opts, std::ostream& out,
               std::ostream& err);
int cmd_simulate(Scenario sc, const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err);

// Full command line, including scenario loading and error mapping.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace screening::cli

#endif  // SCREENING_CLI_COMMANDS_HPP_
