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

// The quadratic (Brier) scoring rule, oriented so that larger is better and
// a perfect forecast scores zero.

#ifndef SCREENING_SCORING_HPP_
#define SCREENING_SCORING_HPP_

#include <cstddef>

#include "screening/simplex.hpp"

namespace screening {

// 2 f(s) - ||f||^2 - 1, in [-2, 0]. Throws Error{kIndexOutOfRange}.
double brier(const Forecast& f, std::size_t state);

// sum_s truth(s) * brier(report, s), summed state by state.
double expected_score_direct(const Forecast& truth, const Forecast& report);

// ||truth||^2 - ||truth - report||^2 - 1.
double expected_score_closed_form(const Forecast& truth, const Forecast& report);

// What a truthful reporter loses by announcing `report` instead; equals the
// squared distance between the two.
double propriety_gap(const Forecast& truth, const Forecast& report);

}  // namespace screening

#endif  // SCREENING_SCORING_HPP_
