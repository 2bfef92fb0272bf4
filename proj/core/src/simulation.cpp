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

#include "screening/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "screening/error.hpp"

namespace screening {
namespace {

constexpr std::uint64_t kBlockSize = 1024;

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kInvalidScenario, field + ": " + why);
}

void require_dimension(const Forecast& f, std::size_t n, const std::string& field) {
  if (f.size() != n) {
    invalid(field, "expected " + std::to_string(n) + " probabilities, got " +
                       std::to_string(f.size()));
  }
}

const PlausibleSet* plausible_set_of(const ExpertSpec& e) {
  if (const auto* u = std::get_if<Uninformed>(&e.kind)) return &u->theta;
  if (const auto* p = std::get_if<PartiallyInformed>(&e.kind)) return &p->ball;
  return nullptr;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct BlockTotals {
  std::array<MomentAccumulator, 2> payoff;
  std::array<MomentAccumulator, 2> expectation;
};

}  // namespace

void validate_scenario(const Scenario& sc) {
  const std::size_t n = sc.states.size();
  if (sc.trials < 1) invalid("trials", "must be at least 1");
  if (sc.experts.size() != 2) {
    invalid("experts", "exactly 2 experts required, got " +
                           std::to_string(sc.experts.size()));
  }
  if (const auto* fixed = std::get_if<FixedNature>(&sc.nature)) {
    require_dimension(fixed->truth, n, "nature.forecast");
  }
  for (std::size_t i = 0; i < sc.experts.size(); ++i) {
    const ExpertSpec& e = sc.experts[i];
    const std::string prefix = "experts[" + std::to_string(i) + "]";
    if (e.id.empty()) invalid(prefix + ".id", "must not be empty");
    if (i == 1 && e.id == sc.experts[0].id) invalid(prefix + ".id", "duplicate id");
    const bool informed = std::holds_alternative<Informed>(e.kind);
    const bool truthful = std::holds_alternative<AnnounceTruth>(e.announce);
    if (informed && !truthful) {
      invalid(prefix + ".announce", "informed experts announce the truth");
    }
    if (!informed && truthful) {
      invalid(prefix + ".announce", "uninformed experts do not know the truth");
    }
    if (const auto* p = std::get_if<PartiallyInformed>(&e.kind)) {
      if (p->ball.as_ball() == nullptr) {
        invalid(prefix + ".theta", "partially informed experts hold a ball");
      }
    }
    if (const auto* theta = plausible_set_of(e)) {
      if (theta->dimension() != n) {
        invalid(prefix + ".theta", "dimension " + std::to_string(theta->dimension()) +
                                       " does not match " + std::to_string(n) + " states");
      }
    }
    if (const auto* fixed = std::get_if<AnnounceFixed>(&e.announce)) {
      require_dimension(fixed->forecast, n, prefix + ".announce.fixed");
    }
  }
  if (const auto* w = std::get_if<WitnessContractConfig>(&sc.contract)) {
    if (std::holds_alternative<GammaComparative>(w->policy)) {
      invalid("contract.policy", "use a prop2 contract for comparative margins");
    }
    require_dimension(w->witnesses.first, n, "contract.witnesses[0]");
    require_dimension(w->witnesses.second, n, "contract.witnesses[1]");
  }
}

std::array<Contract, 2> resolve_contracts(const Scenario& sc) {
  if (const auto* w = std::get_if<WitnessContractConfig>(&sc.contract)) {
    const Contract c =
        make_prop1_contract(w->witnesses.first, w->witnesses.second, w->policy);
    return {c.for_role(ExpertRole::kFirst), c.for_role(ExpertRole::kSecond)};
  }
  const auto& cmp = std::get<ComparativeContractConfig>(sc.contract);
  auto [first, second] = make_prop2_contracts(cmp.eps1, cmp.eps2, cmp.gamma);
  return {std::move(first), std::move(second)};
}

MaxminReport analyze_expert(const ExpertSpec& expert, const Contract& c,
                            const Nature& nature, std::size_t n, double tol) {
  if (const auto* theta = plausible_set_of(expert)) {
    return uninformed_maxmin(*theta, c, tol);
  }
  const Forecast truth = std::holds_alternative<FixedNature>(nature)
                             ? std::get<FixedNature>(nature).truth
                             : Forecast::uniform(n);
  const double value = informed_guarantee(c, truth);
  return MaxminReport{value, MixedStrategy::point_mass(truth), truth, decide(value),
                      Method::kExact, 0.0, 0, true};
}

Decision expected_decision(const ExpertSpec& expert, const ExpertSpec& rival) {
  if (std::holds_alternative<Informed>(expert.kind)) return Decision::kAccept;
  if (std::holds_alternative<Uninformed>(expert.kind)) return Decision::kReject;
  const auto* rival_partial = std::get_if<PartiallyInformed>(&rival.kind);
  if (rival_partial == nullptr) return Decision::kReject;
  const double own_radius = std::get<PartiallyInformed>(expert.kind).ball.as_ball()->radius;
  const double rival_radius = rival_partial->ball.as_ball()->radius;
  return own_radius < rival_radius ? Decision::kAccept : Decision::kReject;
}

void MomentAccumulator::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double total = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  count_ += other.count_;
}

double MomentAccumulator::variance() const noexcept {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double MomentAccumulator::standard_error() const noexcept {
  return count_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
}

std::size_t sample_state(const Forecast& truth, Rng& rng) {
  const double u = unit_uniform(rng);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] <= 0.0) continue;
    last_positive = i;
    cumulative += truth[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632BE59BD9B4E019ULL)));
}

SimulationReport run_tournament(const Scenario& sc, const SimulationOptions& opts) {
  validate_scenario(sc);
  const std::size_t n = sc.states.size();
  const std::array<Contract, 2> contracts = resolve_contracts(sc);

  std::array<MaxminReport, 2> analysis{
      analyze_expert(sc.experts[0], contracts[0], sc.nature, n, opts.tol),
      analyze_expert(sc.experts[1], contracts[1], sc.nature, n, opts.tol)};
  const std::array<bool, 2> accepted{analysis[0].decision == Decision::kAccept,
                                     analysis[1].decision == Decision::kAccept};

  auto announce = [&](std::size_t i, const Forecast& truth, Rng& rng) -> Forecast {
    const ExpertSpec& e = sc.experts[i];
    if (std::holds_alternative<AnnounceTruth>(e.announce)) return truth;
    if (std::holds_alternative<AnnounceChebyshev>(e.announce)) {
      return analysis[i].optimal_strategy.atoms().front().forecast;
    }
    if (std::holds_alternative<AnnounceSample>(e.announce)) {
      return sample_from(*plausible_set_of(e), rng);
    }
    return std::get<AnnounceFixed>(e.announce).forecast;
  };

  auto run_block = [&](std::uint64_t block) {
    BlockTotals totals;
    const std::uint64_t begin = block * kBlockSize;
    const std::uint64_t end = std::min(sc.trials, begin + kBlockSize);
    for (std::uint64_t t = begin; t < end; ++t) {
      Rng rng = trial_rng(sc.seed, t);
      const Forecast truth = std::holds_alternative<FixedNature>(sc.nature)
                                 ? std::get<FixedNature>(sc.nature).truth
                                 : sample_simplex_uniform(n, rng);
      // Both announcements are always drawn so the stream does not depend
      // on the decisions. A lone accepting expert is scored against what
      // the rejecting rival would have announced.
      const std::array<Forecast, 2> said{announce(0, truth, rng), announce(1, truth, rng)};
      const std::size_t state = sample_state(truth, rng);
      for (std::size_t i = 0; i < 2; ++i) {
        if (!accepted[i]) {
          totals.payoff[i].add(0.0);
          totals.expectation[i].add(0.0);
          continue;
        }
        totals.payoff[i].add(realized_payoff(contracts[i], said[i], said[1 - i], state));
        totals.expectation[i].add(
            expected_payoff(contracts[i], truth, said[i], said[1 - i]));
      }
    }
    return totals;
  };

  const std::uint64_t blocks = (sc.trials + kBlockSize - 1) / kBlockSize;
  std::vector<BlockTotals> results(blocks);
  const unsigned threads =
      std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(blocks)));
  if (threads == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) results[b] = run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) results[b] = run_block(b);
      });
    }
  }

  BlockTotals total;
  for (const auto& block : results) {
    for (std::size_t i = 0; i < 2; ++i) {
      total.payoff[i].merge(block.payoff[i]);
      total.expectation[i].merge(block.expectation[i]);
    }
  }

  std::array<ExpertOutcome, 2> outcomes{
      ExpertOutcome{sc.experts[0].id, analysis[0].decision,
                    expected_decision(sc.experts[0], sc.experts[1]), analysis[0],
                    total.payoff[0], total.expectation[0]},
      ExpertOutcome{sc.experts[1].id, analysis[1].decision,
                    expected_decision(sc.experts[1], sc.experts[0]), analysis[1],
                    total.payoff[1], total.expectation[1]}};
  const bool correct = outcomes[0].decision == outcomes[0].expected &&
                       outcomes[1].decision == outcomes[1].expected;
  return SimulationReport{std::move(outcomes), correct, sc.trials, sc.seed};
}

}  // namespace screening
