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

#ifndef SCREENING_SCREENING_HPP_
#define SCREENING_SCREENING_HPP_

#include "screening/contract.hpp"
#include "screening/error.hpp"
#include "screening/maxmin.hpp"
#include "screening/plausible_set.hpp"
#include "screening/scoring.hpp"
#include "screening/simplex.hpp"
#include "screening/simulation.hpp"

#endif  // SCREENING_SCREENING_HPP_
