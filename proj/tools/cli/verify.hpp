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

// Built-in property suites run by `screening verify`.

#ifndef SCREENING_CLI_VERIFY_HPP_
#define SCREENING_CLI_VERIFY_HPP_

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace screening::cli {

struct VerifyOptions {
  // Ten times fewer random instances.
  bool quick = false;
};

struct PropertyResult {
  std::string name;
  bool passed;
  std::size_t instances;
  std::string detail;
};

std::vector<PropertyResult> run_verification(const VerifyOptions& opts);

// Prints the pass/fail table; exit 3 naming the failed properties.
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace screening::cli

#endif  // SCREENING_CLI_VERIFY_HPP_
