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

#include "screening/scoring.hpp"

#include <cassert>
#include <string>

#include "screening/error.hpp"

namespace screening {

double brier(const Forecast& f, std::size_t state) {
  if (state >= f.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "state " + std::to_string(state) + " of " +
                    std::to_string(f.size()));
  }
  const double score = 2.0 * f[state] - norm_sq(f) - 1.0;
  assert(score >= -2.0 - 1e-12 && score <= 1e-12);
  return score;
}

double expected_score_direct(const Forecast& truth, const Forecast& report) {
  require_same_size(truth, report);
  double acc = 0.0;
  for (std::size_t s = 0; s < truth.size(); ++s) {
    acc += truth[s] * brier(report, s);
  }
  return acc;
}

double expected_score_closed_form(const Forecast& truth, const Forecast& report) {
  return norm_sq(truth) - l2_dist_sq(truth, report) - 1.0;
}

double propriety_gap(const Forecast& truth, const Forecast& report) {
  return expected_score_direct(truth, truth) -
         expected_score_direct(truth, report);
}

}  // namespace screening
