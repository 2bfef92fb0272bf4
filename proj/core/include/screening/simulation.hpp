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

// Seeded Monte Carlo tournaments between two experts. Acceptance is decided
// once per scenario by the analyzer; each trial then draws the truth (if
// not fixed), the announcements and a state, and records realized payoffs.

#ifndef SCREENING_SIMULATION_HPP_
#define SCREENING_SIMULATION_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "screening/contract.hpp"
#include "screening/maxmin.hpp"
#include "screening/plausible_set.hpp"
#include "screening/simplex.hpp"

namespace screening {

struct Informed {};
struct Uninformed {
  PlausibleSet theta;
};
// Must hold a Ball.
struct PartiallyInformed {
  PlausibleSet ball;
};
using ExpertKind = std::variant<Informed, Uninformed, PartiallyInformed>;

struct AnnounceTruth {};
struct AnnounceChebyshev {};
struct AnnounceSample {};
struct AnnounceFixed {
  Forecast forecast;
};
using AnnouncePolicy =
    std::variant<AnnounceTruth, AnnounceChebyshev, AnnounceSample, AnnounceFixed>;

struct ExpertSpec {
  std::string id;
  ExpertKind kind;
  AnnouncePolicy announce;
};

struct FixedNature {
  Forecast truth;
};
struct UniformNature {};
using Nature = std::variant<FixedNature, UniformNature>;

struct WitnessContractConfig {
  MarginPolicy policy;
  WitnessPair witnesses;
};
struct ComparativeContractConfig {
  double eps1;
  double eps2;
  double gamma;
};
using ContractConfig = std::variant<WitnessContractConfig, ComparativeContractConfig>;

struct Scenario {
  StateSpace states;
  Nature nature;
  std::vector<ExpertSpec> experts;
  ContractConfig contract;
  std::uint64_t trials;
  std::uint64_t seed;
};

// Throws Error{kInvalidScenario} naming the offending field.
void validate_scenario(const Scenario& sc);

// Contract paid to each expert, in expert order.
std::array<Contract, 2> resolve_contracts(const Scenario& sc);

// Analyzer verdict for one expert: informed_guarantee for informed experts
// (against the fixed truth, or the uniform forecast when nature is drawn),
// uninformed_maxmin otherwise.
MaxminReport analyze_expert(const ExpertSpec& expert, const Contract& c,
                            const Nature& nature, std::size_t n, double tol);

// What screening should produce: informed experts accept, uninformed ones
// reject, and a partially informed expert accepts only against a partially
// informed rival with a strictly larger radius.
Decision expected_decision(const ExpertSpec& expert, const ExpertSpec& rival);

// Streaming mean and variance (Welford), mergeable across partitions.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  // Sample variance; zero below two observations.
  double variance() const noexcept;
  double standard_error() const noexcept;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct ExpertOutcome {
  std::string id;
  Decision decision;
  Decision expected;
  MaxminReport analysis;
  // Realized payoffs, zero on every trial for a rejecting expert.
  MomentAccumulator payoff;
  // Per-trial expected payoff given that trial's truth and announcements.
  MomentAccumulator conditional_expectation;
};

struct SimulationReport {
  std::array<ExpertOutcome, 2> experts;
  bool screening_correct;
  std::uint64_t trials;
  std::uint64_t seed;
};

struct SimulationOptions {
  unsigned threads = 1;
  double tol = 1e-8;
};

// Deterministic given (scenario, seed): trial t draws from its own engine,
// trial_rng(seed, t), and trials are aggregated in fixed-size blocks merged
// in order, so the thread count does not change the output.
SimulationReport run_tournament(const Scenario& sc, const SimulationOptions& opts = {});

// Inverse-CDF draw of a state index.
std::size_t sample_state(const Forecast& truth, Rng& rng);

// Engine for one trial, split from the scenario seed by SplitMix64.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

}  // namespace screening

#endif  // SCREENING_SIMULATION_HPP_
