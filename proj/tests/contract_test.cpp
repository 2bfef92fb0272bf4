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

#include <gtest/gtest.h>

#include "screening/error.hpp"
#include "test_oracles.hpp"

namespace screening {
namespace {

const Forecast kX({1, 0});
const Forecast kY({0, 1});

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Prop1ContractTest, MarginPolicies) {
  const Contract paper = make_prop1_contract(kX, kY, PaperEpsilon{});
  EXPECT_DOUBLE_EQ(paper.margin(), 1.0);
  ASSERT_TRUE(paper.witnesses().has_value());
  EXPECT_EQ(paper.witnesses()->first, kX);
  EXPECT_EQ(policy_name(paper.policy()), "paper");

  EXPECT_DOUBLE_EQ(make_prop1_contract(kX, kY, SafeEpsilon{}).margin(), 0.25);
  EXPECT_DOUBLE_EQ(make_prop1_contract(kX, kY, FixedMargin{0.07}).margin(), 0.07);
}

TEST(Prop1ContractTest, Errors) {
  EXPECT_EQ(code_of([] { make_prop1_contract(kX, kX, SafeEpsilon{}); }),
            ErrorCode::kDegenerateWitnesses);
  EXPECT_EQ(code_of([] { make_prop1_contract(kX, kY, GammaComparative{0.1}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { make_prop1_contract(kX, Forecast({0.2, 0.3, 0.5}), SafeEpsilon{}); }),
            ErrorCode::kLengthMismatch);
}

TEST(Prop2ContractTest, MirroredPair) {
  const auto [first, second] = make_prop2_contracts(0.1, 0.5, 0.1);
  EXPECT_DOUBLE_EQ(first.margin(), 0.1);
  EXPECT_DOUBLE_EQ(second.margin(), 0.1);
  EXPECT_EQ(first.role(), ExpertRole::kFirst);
  EXPECT_EQ(second.role(), ExpertRole::kSecond);
  EXPECT_EQ(policy_name(first.policy()), "gamma");
}

TEST(Prop2ContractTest, Errors) {
  EXPECT_EQ(code_of([] { make_prop2_contracts(0.1, 0.5, 0.3); }), ErrorCode::kInvalidGamma);
  EXPECT_EQ(code_of([] { make_prop2_contracts(0.1, 0.5, 0.01); }), ErrorCode::kInvalidGamma);
  EXPECT_EQ(code_of([] { make_prop2_contracts(0.5, 0.1, 0.1); }), ErrorCode::kInvalidRadii);
  EXPECT_EQ(code_of([] { make_prop2_contracts(0.0, 0.1, 0.005); }), ErrorCode::kInvalidRadii);
}

TEST(RealizedPayoffTest, HandValues) {
  const Contract m = Contract::fixed(0.3);
  const Forecast f({0.4, 0.6});
  EXPECT_DOUBLE_EQ(realized_payoff(m, f, f, 0), 0.3);
  EXPECT_DOUBLE_EQ(realized_payoff(m, f, f, 1), 0.3);
  const Contract zero = Contract::fixed(0.0);
  EXPECT_DOUBLE_EQ(realized_payoff(zero, kX, kY, 0), 2.0);
  EXPECT_DOUBLE_EQ(realized_payoff(zero, kY, kX, 0), -2.0);
  EXPECT_THROW(realized_payoff(zero, kX, kY, 5), Error);
}

TEST(ExpectedPayoffTest, HandValues) {
  const Forecast truth({0.8, 0.2});
  const Forecast rival({0.5, 0.5});
  const Contract eps = make_prop1_contract(kX, kY, SafeEpsilon{});
  EXPECT_NEAR(expected_payoff(eps, truth, truth, rival), 0.18 + 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(expected_payoff(eps, truth, rival, rival), 0.25);
  EXPECT_NEAR(expected_payoff(Contract::fixed(0.0), truth, truth, rival), 0.18, 1e-15);
}

TEST(ContractPropertyTest, ZeroSumCoreOfMirroredPair) {
  const auto [first, second] = make_prop2_contracts(0.1, 0.4, 0.05);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + i % 4;
    const Forecast a = testing::random_forecast(rng, n);
    const Forecast b = testing::random_forecast(rng, n);
    for (std::size_t s = 0; s < n; ++s) {
      EXPECT_NEAR(realized_payoff(first, a, b, s) + realized_payoff(second, b, a, s),
                  first.margin() + second.margin(), 1e-12);
    }
  }
}

TEST(ContractPropertyTest, ExpectationMatchesWeightedRealizations) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 2 + i % 5;
    const Contract c = Contract::fixed(0.01 * (i % 7));
    const Forecast truth = testing::random_forecast(rng, n);
    const Forecast own = testing::random_forecast(rng, n);
    const Forecast rival = testing::random_forecast(rng, n);
    double direct = 0.0;
    for (std::size_t s = 0; s < n; ++s) direct += truth[s] * realized_payoff(c, own, rival, s);
    EXPECT_NEAR(expected_payoff(c, truth, own, rival), direct, 1e-12);
  }
}

TEST(ContractPropertyTest, HonestyDominatesAndMarginIsMonotone) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 2 + i % 5;
    const Forecast truth = testing::random_forecast(rng, n);
    const Forecast own = testing::random_forecast(rng, n);
    const Forecast rival = testing::random_forecast(rng, n);
    const Contract c = Contract::fixed(0.1);
    const double honest = expected_payoff(c, truth, truth, rival);
    EXPECT_NEAR(honest - expected_payoff(c, truth, own, rival), l2_dist_sq(truth, own),
                1e-12);
    if (l2_dist_sq(truth, own) > 1e-12) {
      EXPECT_GT(honest, expected_payoff(c, truth, own, rival));
    }
    EXPECT_LT(expected_payoff(c, truth, own, rival),
              expected_payoff(Contract::fixed(0.2), truth, own, rival));
  }
}

}  // namespace
}  // namespace screening
