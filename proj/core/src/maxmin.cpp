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

#include "screening/maxmin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "screening/error.hpp"
#include "screening/scoring.hpp"

namespace screening {
namespace {

std::size_t oracle_boundary_directions(std::size_t n) {
  if (n == 2) return 2;
  return n == 3 ? 360 : 1000;
}

// Covering radius of the resolution-k simplex lattice (an A_{n-1} lattice
// with step 1/k).
double lattice_covering_radius(std::size_t n, std::size_t k) {
  const double half = static_cast<double>(n / 2);
  const double dn = static_cast<double>(n);
  return std::sqrt(half * (dn - half) / dn) / static_cast<double>(k);
}

std::vector<Forecast> adversary_truths(const PlausibleSet& theta,
                                       const std::vector<Forecast>& grid) {
  std::vector<Forecast> truths =
      extreme_points(theta, oracle_boundary_directions(theta.dimension()));
  if (const auto* ball = theta.as_ball()) {
    truths.push_back(farthest_point(theta, ball->center));
  }
  for (const auto& g : grid) {
    if (contains(theta, g)) truths.push_back(g);
  }
  std::sort(truths.begin(), truths.end());
  auto last = std::unique(truths.begin(), truths.end(),
                          [](const Forecast& a, const Forecast& b) {
                            return l2_dist_sq(a, b) <= 1e-24;
                          });
  truths.erase(last, truths.end());
  return truths;
}

// sum_s truth(s) * score(s), one state at a time.
double expect(const Forecast& truth, const std::vector<double>& scores) {
  double acc = 0.0;
  for (std::size_t s = 0; s < scores.size(); ++s) acc += truth[s] * scores[s];
  return acc;
}

std::vector<double> brier_row(const Forecast& f) {
  std::vector<double> row(f.size());
  for (std::size_t s = 0; s < f.size(); ++s) row[s] = brier(f, s);
  return row;
}

}  // namespace

std::string_view to_string(Decision d) {
  return d == Decision::kAccept ? "Accept" : "Reject";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kExact: return "Exact";
    case Method::kOracle: return "Oracle";
    case Method::kMonteCarlo: return "MonteCarlo";
  }
  return "Unknown";
}

Decision decide(double value) {
  return value > 0.0 ? Decision::kAccept : Decision::kReject;
}

double informed_guarantee(const Contract& c, const Forecast& truth) {
  return expected_payoff(c, truth, truth, truth);
}

MaxminReport uninformed_maxmin(const PlausibleSet& theta, const Contract& c,
                               double tol, int max_iter) {
  const ChebyshevResult cheb = chebyshev(theta, tol, max_iter);
  const double value = c.margin() - cheb.radius_sq;
  return MaxminReport{value,
                      MixedStrategy::point_mass(cheb.center),
                      farthest_point(theta, cheb.center),
                      decide(value),
                      Method::kExact,
                      cheb.radius_sq,
                      cheb.iterations,
                      cheb.certified};
}

OracleResult oracle_maxmin(const PlausibleSet& theta, const Contract& c,
                           std::size_t grid_k, bool mixture_pairs, std::size_t cap) {
  const std::size_t n = theta.dimension();
  const std::vector<Forecast> grid = grid_enumerate(n, grid_k, cap);
  const std::vector<Forecast> truths = adversary_truths(theta, grid);
  const double margin = c.margin();

  std::vector<std::vector<double>> grid_scores;
  grid_scores.reserve(grid.size());
  for (const auto& g : grid) grid_scores.push_back(brier_row(g));
  std::vector<std::vector<double>> truth_scores;
  truth_scores.reserve(truths.size());
  for (const auto& f : truths) truth_scores.push_back(brier_row(f));

  // Rival term. The adversary's payoff term is additive in the rival, so
  // for each truth the worst rival is found once and is the same for every
  // strategy of the uninformed expert.
  std::vector<double> rival_score(truths.size());
  std::vector<std::size_t> best_grid_rival(truths.size());
  double grid_gap = 0.0;
  double grid_offset = 0.0;
  for (std::size_t t = 0; t < truths.size(); ++t) {
    double best_grid = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double v = expect(truths[t], grid_scores[g]);
      if (v > best_grid) {
        best_grid = v;
        best_grid_rival[t] = g;
      }
    }
    double best_any = best_grid;
    for (const auto& scores : truth_scores) {
      best_any = std::max(best_any, expect(truths[t], scores));
    }
    rival_score[t] = best_any;
    grid_gap = std::max(grid_gap, best_any - best_grid);
    grid_offset = std::max(
        grid_offset, std::sqrt(l2_dist_sq(truths[t], grid[best_grid_rival[t]])));
  }

  // own[a][t]: expected score of grid strategy a under truth t.
  std::vector<std::vector<double>> own(grid.size(), std::vector<double>(truths.size()));
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t t = 0; t < truths.size(); ++t) {
      own[a][t] = expect(truths[t], grid_scores[a]);
    }
  }

  double best_value = -std::numeric_limits<double>::infinity();
  std::size_t best_atom = 0;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < truths.size(); ++t) {
      worst = std::min(worst, own[a][t] - rival_score[t]);
    }
    if (worst + margin > best_value) {
      best_value = worst + margin;
      best_atom = a;
    }
  }
  const double point_mass_value = best_value;

  std::optional<double> mixture_value;
  std::optional<std::pair<std::size_t, double>> best_pair;  // (b, weight on a)
  std::size_t pair_a = 0;
  std::size_t strategies = grid.size();
  if (mixture_pairs) {
    double best_mix = point_mass_value;
    for (std::size_t a = 0; a < grid.size(); ++a) {
      for (std::size_t b = a + 1; b < grid.size(); ++b) {
        for (int step = 1; step <= 9; ++step) {
          const double w = 0.1 * step;
          ++strategies;
          double worst = std::numeric_limits<double>::infinity();
          for (std::size_t t = 0; t < truths.size(); ++t) {
            worst = std::min(worst, w * own[a][t] + (1.0 - w) * own[b][t] - rival_score[t]);
            if (worst + margin <= best_mix) break;
          }
          if (worst + margin > best_mix) {
            best_mix = worst + margin;
            best_pair = {b, w};
            pair_a = a;
          }
        }
      }
    }
    mixture_value = best_mix;
  }

  std::vector<Atom> atoms;
  std::vector<double> strategy_own(truths.size());
  if (best_pair) {
    const auto [b, w] = *best_pair;
    atoms.push_back({grid[pair_a], w});
    atoms.push_back({grid[b], 1.0 - w});
    for (std::size_t t = 0; t < truths.size(); ++t) {
      strategy_own[t] = w * own[pair_a][t] + (1.0 - w) * own[b][t];
    }
  } else {
    atoms.push_back({grid[best_atom], 1.0});
    strategy_own = own[best_atom];
  }
  MixedStrategy strategy(std::move(atoms));

  std::optional<double> mixture_mean_value;
  if (best_pair) {
    const std::vector<double> mean_scores = brier_row(mixed_mean(strategy));
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < truths.size(); ++t) {
      worst = std::min(worst, expect(truths[t], mean_scores) - rival_score[t]);
    }
    mixture_mean_value = worst + margin;
  } else if (mixture_pairs) {
    mixture_mean_value = point_mass_value;
  }

  // Joint (truth, rival) minimization at the chosen strategy, rivals drawn
  // from the grid and the truths.
  double joint = std::numeric_limits<double>::infinity();
  std::size_t joint_truth = 0;
  const Forecast* joint_rival = nullptr;
  for (std::size_t t = 0; t < truths.size(); ++t) {
    auto consider = [&](const Forecast& rival, const std::vector<double>& scores) {
      const double v = strategy_own[t] - expect(truths[t], scores) + margin;
      if (v < joint) {
        joint = v;
        joint_truth = t;
        joint_rival = &rival;
      }
    };
    for (std::size_t g = 0; g < grid.size(); ++g) consider(grid[g], grid_scores[g]);
    for (std::size_t r = 0; r < truths.size(); ++r) consider(truths[r], truth_scores[r]);
  }
  const double value = std::max(point_mass_value, mixture_value.value_or(point_mass_value));
  const double covering = lattice_covering_radius(n, grid_k);
  const double offset = std::sqrt(l2_dist_sq(*joint_rival, truths[joint_truth]));

  RivalAudit audit{truths[joint_truth],
                   *joint_rival,
                   grid_offset,
                   grid_gap,
                   covering,
                   offset <= covering + 1e-12 && grid_offset <= covering + 1e-12};

  double min_max_sq = std::numeric_limits<double>::infinity();
  for (const auto& g : grid) {
    double far = 0.0;
    for (const auto& f : truths) far = std::max(far, l2_dist_sq(f, g));
    min_max_sq = std::min(min_max_sq, far);
  }

  MaxminReport report{value,           std::move(strategy), truths[joint_truth],
                      decide(value),   Method::kOracle,     min_max_sq,
                      0,               true};
  return OracleResult{std::move(report), point_mass_value, mixture_value,
                      mixture_mean_value, std::move(audit),  strategies,
                      truths.size(),      grid.size() + truths.size()};
}

double truth_telling_gap(const Contract& c, const Forecast& truth,
                         const Forecast& report, const Forecast& rival) {
  return expected_payoff(c, truth, truth, rival) - expected_payoff(c, truth, report, rival);
}

double truth_telling_gap(const Forecast& truth, const Forecast& report) {
  return truth_telling_gap(Contract::fixed(0.0), truth, report, truth);
}

}  // namespace screening
