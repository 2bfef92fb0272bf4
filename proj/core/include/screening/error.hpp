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

#ifndef SCREENING_ERROR_HPP_
#define SCREENING_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace screening {

enum class ErrorCode {
  kNegativeEntry,
  kNotNormalized,
  kLengthMismatch,
  kInvalidStateSpace,
  kIndexOutOfRange,
  kResolutionTooLarge,
  kInvalidStrategy,
  kInvalidSet,
  kEmptySet,
  kInvalidArgument,
  kDegenerateWitnesses,
  kInvalidGamma,
  kInvalidRadii,
  kInvalidScenario,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; code() identifies
// the failure class, what() carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace screening

#endif  // SCREENING_ERROR_HPP_
