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

// Acceptance analysis. An informed expert is guaranteed the margin; an
// uncertainty-averse uninformed expert's maxmin value is the margin minus
// the squared Chebyshev radius of its plausible set. The brute-force
// oracle recomputes the maxmin value from state-by-state payoff sums.

#ifndef SCREENING_MAXMIN_HPP_
#define SCREENING_MAXMIN_HPP_

#include <cstddef>
#include <optional>
#include <string_view>

#include "screening/contract.hpp"
#include "screening/plausible_set.hpp"
#include "screening/simplex.hpp"

namespace screening {

enum class Decision { kAccept, kReject };
enum class Method { kExact, kOracle, kMonteCarlo };

std::string_view to_string(Decision d);
std::string_view to_string(Method m);

// Accept iff the guaranteed value is strictly positive.
Decision decide(double value);

struct MaxminReport {
  double value;
  MixedStrategy optimal_strategy;
  Forecast worst_case_truth;
  Decision decision;
  Method method;
  // Squared Chebyshev radius (exact) or min-max squared distance over the
  // grid (oracle).
  double radius_sq;
  int iterations;
  bool certified;
};

// Worst case over rivals of the truthful expected payoff; the worst rival
// announces the truth itself, leaving exactly the margin.
double informed_guarantee(const Contract& c, const Forecast& truth);

// The adversary's best reply is a point mass on the truth, mixing only adds
// variance to the expected loss, so the optimal strategy is a point mass at
// the Chebyshev center and value = margin - radius_sq.
MaxminReport uninformed_maxmin(const PlausibleSet& theta, const Contract& c,
                               double tol = 1e-8, int max_iter = 20000);

struct RivalAudit {
  // The jointly minimizing (truth, rival) pair at the optimal strategy.
  Forecast minimizing_truth;
  Forecast minimizing_rival;
  // Largest distance between a truth and its best grid-only rival.
  double grid_rival_offset;
  // Largest payoff the adversary gives up by keeping rivals on the grid.
  double grid_rival_gap;
  // Covering radius of the grid; the reduction check uses it as tolerance.
  double grid_tolerance;
  bool reduction_holds;
};

struct OracleResult {
  MaxminReport report;
  double point_mass_value;
  std::optional<double> mixture_value;
  // Value of the point mass at the best mixture's mean, against the same
  // adversary. Never below mixture_value: mixing only adds variance.
  std::optional<double> mixture_mean_value;
  RivalAudit audit;
  std::size_t strategies;
  std::size_t truths;
  std::size_t rivals;
};

// Brute force over point-mass strategies on the resolution-k grid (and,
// with mixture_pairs, every two-point mixture with weights 0.1..0.9);
// adversary truths are the grid points in theta plus theta's elements or
// ball boundary; rivals are every grid point and every truth. Throws
// Error{kResolutionTooLarge} when the grid exceeds `cap`.
OracleResult oracle_maxmin(const PlausibleSet& theta, const Contract& c,
                           std::size_t grid_k, bool mixture_pairs,
                           std::size_t cap = kDefaultGridCap);

// Expected payoff lost by announcing `report` instead of the truth; the
// rival cancels out.
double truth_telling_gap(const Contract& c, const Forecast& truth,
                         const Forecast& report, const Forecast& rival);
double truth_telling_gap(const Forecast& truth, const Forecast& report);

}  // namespace screening

#endif  // SCREENING_MAXMIN_HPP_
