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

#include "screening/contract.hpp"

#include <cmath>
#include <sstream>

#include "screening/error.hpp"
#include "screening/plausible_set.hpp"
#include "screening/scoring.hpp"

namespace screening {

std::string policy_name(const MarginPolicy& policy) {
  struct Visitor {
    std::string operator()(const PaperEpsilon&) const { return "paper"; }
    std::string operator()(const SafeEpsilon&) const { return "safe"; }
    std::string operator()(const FixedMargin&) const { return "fixed"; }
    std::string operator()(const GammaComparative&) const { return "gamma"; }
  };
  return std::visit(Visitor{}, policy);
}

Contract::Contract(double margin, MarginPolicy policy,
                   std::optional<WitnessPair> witnesses, ExpertRole role)
    : margin_(margin),
      policy_(std::move(policy)),
      witnesses_(std::move(witnesses)),
      role_(role) {
  if (!std::isfinite(margin_)) {
    throw Error(ErrorCode::kInvalidArgument, "contract margin must be finite");
  }
}

Contract Contract::fixed(double margin, ExpertRole role) {
  return Contract(margin, FixedMargin{margin}, std::nullopt, role);
}

Contract Contract::for_role(ExpertRole role) const {
  Contract out = *this;
  out.role_ = role;
  return out;
}

Contract make_prop1_contract(const Forecast& fx, const Forecast& fy,
                             const MarginPolicy& policy) {
  const double d2 = l2_dist_sq(fx, fy);
  if (std::sqrt(d2) <= kMembershipTol) {
    throw Error(ErrorCode::kDegenerateWitnesses, "witness forecasts coincide");
  }
  double margin = 0.0;
  if (std::holds_alternative<PaperEpsilon>(policy)) {
    margin = d2 / 2.0;
  } else if (std::holds_alternative<SafeEpsilon>(policy)) {
    margin = d2 / 8.0;
  } else if (const auto* fixed = std::get_if<FixedMargin>(&policy)) {
    margin = fixed->value;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "witness contracts take paper, safe or fixed margins");
  }
  return Contract(margin, policy, WitnessPair{fx, fy}, ExpertRole::kFirst);
}

std::pair<Contract, Contract> make_prop2_contracts(double eps1, double eps2,
                                                   double gamma) {
  if (!std::isfinite(eps1) || !std::isfinite(eps2) || !(eps1 > 0.0) ||
      !(eps1 < eps2)) {
    throw Error(ErrorCode::kInvalidRadii, "need 0 < eps1 < eps2");
  }
  const double lo = eps1 * eps1;
  const double hi = eps2 * eps2;
  if (!(gamma > lo && gamma < hi)) {
    std::ostringstream os;
    os << "gamma " << gamma << " outside (" << lo << ", " << hi << ")";
    throw Error(ErrorCode::kInvalidGamma, os.str());
  }
  Contract first(gamma, GammaComparative{gamma}, std::nullopt, ExpertRole::kFirst);
  Contract second(gamma, GammaComparative{gamma}, std::nullopt, ExpertRole::kSecond);
  return {std::move(first), std::move(second)};
}

double realized_payoff(const Contract& c, const Forecast& own, const Forecast& rival,
                       std::size_t state) {
  require_same_size(own, rival);
  return brier(own, state) - brier(rival, state) + c.margin();
}

double expected_payoff(const Contract& c, const Forecast& truth, const Forecast& own,
                       const Forecast& rival) {
  return l2_dist_sq(truth, rival) - l2_dist_sq(truth, own) + c.margin();
}

}  // namespace screening
