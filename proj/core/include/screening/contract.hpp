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

// Screening contracts: the Brier-score difference between an expert's own
// forecast and the rival's, plus a margin.

#ifndef SCREENING_CONTRACT_HPP_
#define SCREENING_CONTRACT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "screening/simplex.hpp"

namespace screening {

// Half the squared witness distance.
struct PaperEpsilon {};
// An eighth of the squared witness distance; strictly below the squared
// Chebyshev radius of any set holding both witnesses.
struct SafeEpsilon {};
struct FixedMargin {
  double value;
};
// Comparative contracts between two ball-shaped experts.
struct GammaComparative {
  double gamma;
};

using MarginPolicy =
    std::variant<PaperEpsilon, SafeEpsilon, FixedMargin, GammaComparative>;

std::string policy_name(const MarginPolicy& policy);

enum class ExpertRole { kFirst, kSecond };

using WitnessPair = std::pair<Forecast, Forecast>;

class Contract {
 public:
  // Margin-only contract, no provenance beyond the fixed value.
  static Contract fixed(double margin, ExpertRole role = ExpertRole::kFirst);

  double margin() const noexcept { return margin_; }
  const MarginPolicy& policy() const noexcept { return policy_; }
  const std::optional<WitnessPair>& witnesses() const noexcept { return witnesses_; }
  ExpertRole role() const noexcept { return role_; }

  // Same payoff rule, paying the other expert.
  Contract for_role(ExpertRole role) const;

 private:
  Contract(double margin, MarginPolicy policy, std::optional<WitnessPair> witnesses,
           ExpertRole role);

  friend Contract make_prop1_contract(const Forecast&, const Forecast&,
                                      const MarginPolicy&);
  friend std::pair<Contract, Contract> make_prop2_contracts(double, double, double);

  double margin_;
  MarginPolicy policy_;
  std::optional<WitnessPair> witnesses_;
  ExpertRole role_;
};

// Contract built from two distinct plausible forecasts. Throws
// Error{kDegenerateWitnesses} when they coincide and Error{kInvalidArgument}
// for the comparative policy.
Contract make_prop1_contract(const Forecast& fx, const Forecast& fy,
                             const MarginPolicy& policy);

// Mirrored pair for experts with ball radii eps1 < eps2, both with additive
// margin gamma in (eps1^2, eps2^2). Throws Error{kInvalidRadii} or
// Error{kInvalidGamma}.
std::pair<Contract, Contract> make_prop2_contracts(double eps1, double eps2,
                                                   double gamma);

// brier(own, s) - brier(rival, s) + margin.
double realized_payoff(const Contract& c, const Forecast& own, const Forecast& rival,
                       std::size_t state);

// ||truth - rival||^2 - ||truth - own||^2 + margin.
double expected_payoff(const Contract& c, const Forecast& truth, const Forecast& own,
                       const Forecast& rival);

}  // namespace screening

#endif  // SCREENING_CONTRACT_HPP_
