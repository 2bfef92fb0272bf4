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

#include "cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <limits>
#include <string>
#include <utility>

#include "cli/commands.hpp"
#include "screening/contract.hpp"
#include "screening/maxmin.hpp"
#include "screening/plausible_set.hpp"
#include "screening/scoring.hpp"
#include "screening/simulation.hpp"

namespace screening::cli {
namespace {

constexpr std::uint64_t kSeed = 20260516;
constexpr std::size_t kOracleK = 50;
constexpr double kOracleBound = 3.0 / kOracleK;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

std::size_t count(const VerifyOptions& opts, std::size_t full) {
  return opts.quick ? std::max<std::size_t>(1, full / 10) : full;
}

PlausibleSet random_finite(Rng& rng) {
  const std::size_t n = 2 + rng() % 2;
  const std::size_t points = 2 + rng() % 4;
  std::vector<Forecast> list;
  while (list.size() < points) {
    Forecast f = sample_simplex_uniform(n, rng);
    const bool fresh = std::none_of(list.begin(), list.end(), [&](const Forecast& g) {
      return l2_dist_sq(f, g) < 1e-6;
    });
    if (fresh) list.push_back(std::move(f));
  }
  return PlausibleSet::finite(std::move(list));
}

// Uncut ball in the 3-state simplex.
PlausibleSet random_ball(Rng& rng, double radius) {
  const double floor = radius * std::sqrt(2.0 / 3.0) + 1e-3;
  for (;;) {
    Forecast c = sample_simplex_uniform(3, rng);
    if (c[0] >= floor && c[1] >= floor && c[2] >= floor) {
      return PlausibleSet::ball(std::move(c), radius);
    }
  }
}

// Two distinct elements of theta to serve as contract witnesses.
WitnessPair witnesses_in(const PlausibleSet& theta, Rng& rng) {
  if (const auto* fin = theta.as_finite()) {
    const std::size_t m = fin->forecasts.size();
    const std::size_t i = rng() % m;
    const std::size_t j = (i + 1 + rng() % (m - 1)) % m;
    return {fin->forecasts[i], fin->forecasts[j]};
  }
  const auto* ball = theta.as_ball();
  // Endpoints of a chord through the center along (1, -1, 0).
  const double step = ball->radius / std::sqrt(2.0);
  std::vector<double> a(ball->center.probs().begin(), ball->center.probs().end());
  std::vector<double> b = a;
  a[0] += step;
  a[1] -= step;
  b[0] -= step;
  b[1] += step;
  return {Forecast(a), Forecast(b)};
}

struct Tally {
  std::size_t instances = 0;
  std::size_t failures = 0;
  double worst = -std::numeric_limits<double>::infinity();

  void check(bool ok, double error = 0.0) {
    ++instances;
    if (!ok) ++failures;
    worst = std::max(worst, error);
  }
};

PropertyResult finish(std::string name, const Tally& t, const std::string& what) {
  std::string detail = t.instances > 0 ? what + " " + sci(t.worst) : "no instances";
  if (t.failures > 0) detail += ", " + std::to_string(t.failures) + " failing";
  return {std::move(name), t.failures == 0 && t.instances > 0, t.instances, detail};
}

class Suite {
 public:
  explicit Suite(const VerifyOptions& opts) : opts_(opts), rng_(kSeed) {}

  PropertyResult brier_identity() {
    Tally t;
    for (std::size_t i = 0; i < count(opts_, 10000); ++i) {
      const std::size_t n = 2 + rng_() % 4;
      const Forecast truth = sample_simplex_uniform(n, rng_);
      const Forecast report = sample_simplex_uniform(n, rng_);
      const double err = std::abs(expected_score_direct(truth, report) -
                                  expected_score_closed_form(truth, report));
      t.check(err <= 1e-12, err);
    }
    return finish("brier-identity", t, "max |direct - closed form|");
  }

  PropertyResult truth_telling() {
    Tally t;
    for (std::size_t i = 0; i < count(opts_, 1000); ++i) {
      const std::size_t n = 2 + rng_() % 4;
      const Forecast truth = sample_simplex_uniform(n, rng_);
      const Forecast report = sample_simplex_uniform(n, rng_);
      const Forecast r1 = sample_simplex_uniform(n, rng_);
      const Forecast r2 = sample_simplex_uniform(n, rng_);
      const Contract c = Contract::fixed(uniform(rng_, 0.0, 1.0));
      const double g1 = truth_telling_gap(c, truth, report, r1);
      const double g2 = truth_telling_gap(c, truth, report, r2);
      const double err = std::max(std::abs(g1 - l2_dist_sq(truth, report)), std::abs(g1 - g2));
      t.check(err <= 1e-12, err);
    }
    return finish("truth-telling-gap", t, "max deviation from ||truth - report||^2");
  }

  PropertyResult informed_acceptance() {
    Tally t;
    const auto rivals = grid_enumerate(3, 60);
    for (std::size_t i = 0; i < count(opts_, 1000); ++i) {
      const Forecast truth = sample_simplex_uniform(3, rng_);
      const double m = uniform(rng_, 1e-3, 1.0);
      const Contract c = Contract::fixed(m);
      double worst = std::abs(informed_guarantee(c, truth) - m);
      bool ok = worst <= 1e-12;
      for (const auto& rival : rivals) {
        const double shortfall = m - expected_payoff(c, truth, truth, rival);
        ok = ok && shortfall <= 1e-9;
        worst = std::max(worst, shortfall);
      }
      t.check(ok, worst);
    }
    return finish("informed-acceptance", t, "max shortfall below the margin");
  }

  PropertyResult maxmin_vs_oracle() {
    Tally t;
    const Contract c = Contract::fixed(0.25);
    auto run = [&](const PlausibleSet& theta) {
      const MaxminReport exact = uninformed_maxmin(theta, c);
      const OracleResult o = oracle_maxmin(theta, c, kOracleK, false);
      const double diff = std::abs(exact.value - o.report.value);
      t.check(diff <= kOracleBound && exact.certified, diff);
      record_audit(o);
    };
    for (std::size_t i = 0; i < count(opts_, 50); ++i) run(random_finite(rng_));
    for (std::size_t i = 0; i < count(opts_, 20); ++i) run(random_ball(rng_, uniform(rng_, 0.05, 0.25)));
    return finish("maxmin-vs-oracle", t, "max |exact - oracle(k=50)|");
  }

  PropertyResult safe_epsilon_rejects() {
    Tally t;
    auto run = [&](const PlausibleSet& theta) {
      const auto [fx, fy] = witnesses_in(theta, rng_);
      const Contract c = make_prop1_contract(fx, fy, SafeEpsilon{});
      const MaxminReport r = uninformed_maxmin(theta, c);
      t.check(r.decision == Decision::kReject && r.value < 0.0, r.value);
    };
    for (std::size_t i = 0; i < count(opts_, 50); ++i) run(random_finite(rng_));
    for (std::size_t i = 0; i < count(opts_, 20); ++i) run(random_ball(rng_, uniform(rng_, 0.05, 0.25)));
    return finish("safe-epsilon-rejects", t, "max uninformed value");
  }

  // Expected to accept: with margin ||fx-fy||^2/2 on a two-point set the
  // uninformed value is ||fx-fy||^2/4 > 0.
  PropertyResult paper_counterexample() {
    Tally t;
    auto run = [&](const Forecast& fx, const Forecast& fy) {
      const PlausibleSet theta = PlausibleSet::finite({fx, fy});
      const Contract c = make_prop1_contract(fx, fy, PaperEpsilon{});
      const double expected = l2_dist_sq(fx, fy) / 4.0;
      const MaxminReport exact = uninformed_maxmin(theta, c);
      const OracleResult o = oracle_maxmin(theta, c, kOracleK, false);
      record_audit(o);
      const double err = std::max(std::abs(exact.value - expected),
                                  std::abs(o.report.value - expected));
      t.check(exact.decision == Decision::kAccept &&
                  o.report.decision == Decision::kAccept && err <= kOracleBound,
              err);
    };
    run(Forecast({1.0, 0.0}), Forecast({0.0, 1.0}));
    for (std::size_t i = 0; i < count(opts_, 20); ++i) {
      const std::size_t n = 2 + rng_() % 2;
      const Forecast fx = sample_simplex_uniform(n, rng_);
      const Forecast fy = sample_simplex_uniform(n, rng_);
      // Tiny gaps would make Accept indistinguishable from zero.
      if (l2_dist_sq(fx, fy) < 0.05) continue;
      run(fx, fy);
    }
    return finish("paper-epsilon counterexample", t, "max |value - ||fx-fy||^2/4|");
  }

  PropertyResult prop2_screening() {
    Tally t;
    for (std::size_t i = 0; i < count(opts_, 20); ++i) {
      const double eps1 = uniform(rng_, 0.03, 0.15);
      const double eps2 = uniform(rng_, eps1 + 0.03, 0.25);
      const double gamma = uniform(rng_, eps1 * eps1, eps2 * eps2);
      const auto [c1, c2] = make_prop2_contracts(eps1, eps2, gamma);
      const PlausibleSet b1 = random_ball(rng_, eps1);
      const PlausibleSet b2 = random_ball(rng_, eps2);
      const MaxminReport r1 = uninformed_maxmin(b1, c1);
      const MaxminReport r2 = uninformed_maxmin(b2, c2);
      const OracleResult o1 = oracle_maxmin(b1, c1, kOracleK, false);
      const OracleResult o2 = oracle_maxmin(b2, c2, kOracleK, false);
      record_audit(o1);
      record_audit(o2);
      const double closed = std::max(std::abs(r1.value - (gamma - eps1 * eps1)),
                                     std::abs(r2.value - (gamma - eps2 * eps2)));
      const double oracle = std::max(std::abs(r1.value - o1.report.value),
                                     std::abs(r2.value - o2.report.value));
      t.check(r1.decision == Decision::kAccept && r2.decision == Decision::kReject &&
                  closed <= 1e-6 && oracle <= kOracleBound,
              closed);
    }
    return finish("prop2-screening", t, "max |value - closed form|");
  }

  PropertyResult monte_carlo() {
    Tally t;
    const std::uint64_t trials = count(opts_, 100000);
    for (const Scenario& sc : tournament_scenarios(trials)) {
      const SimulationReport a = run_tournament(sc);
      const SimulationReport b = run_tournament(sc, SimulationOptions{3, 1e-8});
      const bool identical = simulate_report(sc, a, 1e-8).dump() ==
                             simulate_report(sc, b, 1e-8).dump();
      t.check(identical, 0.0);
      for (const auto& o : a.experts) {
        if (o.decision == Decision::kReject) {
          t.check(o.payoff.mean() == 0.0 && o.payoff.variance() == 0.0, 0.0);
          continue;
        }
        const double se = o.payoff.standard_error();
        const double z = std::abs(o.payoff.mean() - o.conditional_expectation.mean()) /
                         std::max(se, 1e-300);
        t.check(z <= 4.0, z);
      }
    }
    return finish("monte-carlo-consistency", t, "max |mean - expected| in standard errors");
  }

  PropertyResult mixture_dominance() {
    Tally t;
    const Contract c = Contract::fixed(0.25);
    for (std::size_t i = 0; i < count(opts_, 10); ++i) {
      const PlausibleSet theta = random_finite(rng_);
      const MaxminReport exact = uninformed_maxmin(theta, c);
      const OracleResult o = oracle_maxmin(theta, c, 12, true);
      const double excess = std::max(*o.mixture_value - exact.value,
                                     *o.mixture_value - *o.mixture_mean_value);
      t.check(excess <= 1e-9, std::max(0.0, excess));
    }
    return finish("mixture-dominance", t, "max mixture excess");
  }

  PropertyResult reduction_audit() const {
    return finish("reduction-audit", audits_, "max truth-rival offset");
  }

 private:
  void record_audit(const OracleResult& o) {
    audits_.check(o.audit.reduction_holds, l2_dist_sq(o.audit.minimizing_truth,
                                                      o.audit.minimizing_rival));
  }

  static std::vector<Scenario> tournament_scenarios(std::uint64_t trials) {
    const StateSpace two = StateSpace::numbered(2);
    const StateSpace three = StateSpace::numbered(3);
    const Forecast e0({1.0, 0.0});
    const Forecast e1({0.0, 1.0});
    const PlausibleSet pair = PlausibleSet::finite({e0, e1});
    std::vector<Scenario> out;
    out.push_back(Scenario{two,
                           FixedNature{Forecast({0.7, 0.3})},
                           {ExpertSpec{"informed", Informed{}, AnnounceTruth{}},
                            ExpertSpec{"uninformed", Uninformed{pair}, AnnounceChebyshev{}}},
                           WitnessContractConfig{SafeEpsilon{}, {e0, e1}},
                           trials,
                           7});
    out.push_back(Scenario{two,
                           UniformNature{},
                           {ExpertSpec{"informed", Informed{}, AnnounceTruth{}},
                            ExpertSpec{"uninformed", Uninformed{pair}, AnnounceSample{}}},
                           WitnessContractConfig{PaperEpsilon{}, {e0, e1}},
                           trials,
                           11});
    const Forecast center({0.4, 0.3, 0.3});
    out.push_back(Scenario{three,
                           FixedNature{center},
                           {ExpertSpec{"sharp", PartiallyInformed{PlausibleSet::ball(center, 0.1)},
                                       AnnounceChebyshev{}},
                            ExpertSpec{"vague", PartiallyInformed{PlausibleSet::ball(center, 0.2)},
                                       AnnounceSample{}}},
                           ComparativeContractConfig{0.1, 0.2, 0.02},
                           trials,
                           13});
    return out;
  }

  VerifyOptions opts_;
  Rng rng_;
  Tally audits_;
};

PropertyResult guarded(const std::string& name, const std::function<PropertyResult()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {name, false, 0, std::string("threw: ") + e.what()};
  }
}

}  // namespace

std::vector<PropertyResult> run_verification(const VerifyOptions& opts) {
  Suite s(opts);
  std::vector<PropertyResult> out;
  out.push_back(guarded("brier-identity", [&] { return s.brier_identity(); }));
  out.push_back(guarded("truth-telling-gap", [&] { return s.truth_telling(); }));
  out.push_back(guarded("informed-acceptance", [&] { return s.informed_acceptance(); }));
  out.push_back(guarded("maxmin-vs-oracle", [&] { return s.maxmin_vs_oracle(); }));
  out.push_back(guarded("safe-epsilon-rejects", [&] { return s.safe_epsilon_rejects(); }));
  out.push_back(guarded("paper-epsilon counterexample", [&] { return s.paper_counterexample(); }));
  out.push_back(guarded("prop2-screening", [&] { return s.prop2_screening(); }));
  out.push_back(guarded("monte-carlo-consistency", [&] { return s.monte_carlo(); }));
  out.push_back(guarded("mixture-dominance", [&] { return s.mixture_dominance(); }));
  out.push_back(guarded("reduction-audit", [&] { return s.reduction_audit(); }));
  return out;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  const auto results = run_verification(opts);
  out << std::left << std::setw(30) << "property" << std::setw(8) << "result"
      << std::setw(11) << "instances" << "detail\n";
  std::string failed;
  for (const auto& r : results) {
    out << std::left << std::setw(30) << r.name << std::setw(8) << (r.passed ? "PASS" : "FAIL")
        << std::setw(11) << r.instances << r.detail << '\n';
    if (!r.passed) failed += (failed.empty() ? "" : ", ") + r.name;
  }
  if (!failed.empty()) {
    err << "verification failed: " << failed << '\n';
    return kExitVerificationFailure;
  }
  return kExitOk;
}

}  // namespace screening::cli
