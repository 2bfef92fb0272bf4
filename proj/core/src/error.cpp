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

#include "screening/error.hpp"

namespace screening {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidStateSpace: return "InvalidStateSpace";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kResolutionTooLarge: return "ResolutionTooLarge";
    case ErrorCode::kInvalidStrategy: return "InvalidStrategy";
    case ErrorCode::kInvalidSet: return "InvalidSet";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDegenerateWitnesses: return "DegenerateWitnesses";
    case ErrorCode::kInvalidGamma: return "InvalidGamma";
    case ErrorCode::kInvalidRadii: return "InvalidRadii";
    case ErrorCode::kInvalidScenario: return "InvalidScenario";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code) {}

}  // namespace screening
