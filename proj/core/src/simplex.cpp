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

#include "screening/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "screening/error.hpp"

namespace screening {

double unit_uniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_exponential(Rng& rng) {
  return -std::log1p(-unit_uniform(rng));
}

StateSpace::StateSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw Error(ErrorCode::kInvalidStateSpace,
                "a state space needs at least two states");
  }
  std::set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::kInvalidStateSpace,
                  "duplicate state label '" + label + "'");
    }
  }
}

StateSpace StateSpace::numbered(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  return StateSpace(std::move(labels));
}

std::optional<std::size_t> StateSpace::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

Forecast::Forecast(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw Error(ErrorCode::kInvalidStateSpace,
                "a forecast needs at least two states");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    double& p = probs_[i];
    if (!std::isfinite(p)) {
      throw Error(ErrorCode::kNotNormalized,
                  "entry " + std::to_string(i) + " is not finite");
    }
    if (p < -kNegativeTol) {
      throw Error(ErrorCode::kNegativeEntry,
                  "entry " + std::to_string(i) + " is negative");
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    std::ostringstream os;
    os.precision(17);
    os << "entries sum to " << sum;
    throw Error(ErrorCode::kNotNormalized, os.str());
  }
  // Lattice points already sum to one within a few ulps; dividing them by
  // such a sum would perturb their lexicographic order.
  if (std::abs(sum - 1.0) > 8.0 * std::numeric_limits<double>::epsilon()) {
    for (double& p : probs_) p /= sum;
  }
}

Forecast Forecast::uniform(std::size_t n) {
  return Forecast(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Forecast Forecast::vertex(std::size_t n, std::size_t state) {
  if (state >= n) {
    throw Error(ErrorCode::kIndexOutOfRange, "vertex index out of range");
  }
  std::vector<double> probs(n, 0.0);
  probs[state] = 1.0;
  return Forecast(std::move(probs));
}

std::string to_string(const Forecast& f) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) os << ", ";
    os << f[i];
  }
  os << ')';
  return os.str();
}

Forecast validate_forecast(std::span<const double> raw, const StateSpace& space) {
  if (raw.size() != space.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected " + std::to_string(space.size()) + " entries, got " +
                    std::to_string(raw.size()));
  }
  return Forecast(std::vector<double>(raw.begin(), raw.end()));
}

void require_same_size(const Forecast& f, const Forecast& g) {
  if (f.size() != g.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "forecasts of dimension " + std::to_string(f.size()) + " and " +
                    std::to_string(g.size()));
  }
}

double l2_dist_sq(const Forecast& f, const Forecast& g) {
  require_same_size(f, g);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f[i] - g[i];
    acc += d * d;
  }
  return acc;
}

double norm_sq(const Forecast& f) {
  double acc = 0.0;
  for (double p : f.probs()) acc += p * p;
  return acc;
}

MixedStrategy::MixedStrategy(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw Error(ErrorCode::kInvalidStrategy, "a mixed strategy needs an atom");
  }
  const std::size_t n = atoms_.front().forecast.size();
  double total = 0.0;
  for (const auto& atom : atoms_) {
    if (atom.forecast.size() != n) {
      throw Error(ErrorCode::kInvalidStrategy, "atoms differ in dimension");
    }
    if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
      throw Error(ErrorCode::kInvalidStrategy, "atom weights must be positive");
    }
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    throw Error(ErrorCode::kInvalidStrategy, "atom weights must sum to one");
  }
  for (auto& atom : atoms_) atom.weight /= total;
}

MixedStrategy MixedStrategy::point_mass(Forecast f) {
  std::vector<Atom> atoms;
  atoms.push_back({std::move(f), 1.0});
  return MixedStrategy(std::move(atoms));
}

Forecast mixed_mean(const MixedStrategy& xi) {
  if (xi.is_point_mass()) return xi.atoms().front().forecast;
  std::vector<double> mean(xi.dimension(), 0.0);
  for (const auto& atom : xi.atoms()) {
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mean[i] += atom.weight * atom.forecast[i];
    }
  }
  return Forecast(std::move(mean));
}

Forecast sample_simplex_uniform(std::size_t n, Rng& rng) {
  std::vector<double> draws(n);
  double total = 0.0;
  for (double& d : draws) {
    d = standard_exponential(rng);
    total += d;
  }
  // All-zero draws need every variate to hit u = 0 exactly.
  if (total <= 0.0) return Forecast::uniform(n);
  for (double& d : draws) d /= total;
  return Forecast(std::move(draws));
}

Forecast sample_simplex_uniform(const StateSpace& space, Rng& rng) {
  return sample_simplex_uniform(space.size(), rng);
}

std::optional<std::size_t> grid_size(std::size_t n, std::size_t k,
                                     std::size_t cap) {
  if (n == 0) return std::nullopt;
  // C(k+i, i) = C(k+i-1, i-1) * (k+i) / i, increasing in i.
  std::size_t count = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (k + i < k || count > std::numeric_limits<std::size_t>::max() / (k + i)) {
      return std::nullopt;
    }
    count = count * (k + i) / i;
    if (count > cap) return std::nullopt;
  }
  if (count > cap) return std::nullopt;
  return count;
}

std::vector<Forecast> grid_enumerate(std::size_t n, std::size_t k,
                                     std::size_t cap) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidStateSpace,
                "grid needs at least two states");
  }
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "grid resolution must be >= 1");
  }
  const auto count = grid_size(n, k, cap);
  if (!count) {
    throw Error(ErrorCode::kResolutionTooLarge,
                "grid with n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                    " exceeds the cap of " + std::to_string(cap) + " points");
  }
  std::vector<Forecast> out;
  out.reserve(*count);
  std::vector<std::size_t> units(n, 0);
  const double step = 1.0 / static_cast<double>(k);
  std::function<void(std::size_t, std::size_t)> fill =
      [&](std::size_t pos, std::size_t remaining) {
        if (pos + 1 == n) {
          units[pos] = remaining;
          std::vector<double> probs(n);
          for (std::size_t i = 0; i < n; ++i) {
            probs[i] = static_cast<double>(units[i]) * step;
          }
          out.emplace_back(std::move(probs));
          return;
        }
        for (std::size_t c = 0; c <= remaining; ++c) {
          units[pos] = c;
          fill(pos + 1, remaining - c);
        }
      };
  fill(0, k);
  return out;
}

std::vector<Forecast> grid_enumerate(const StateSpace& space, std::size_t k,
                                     std::size_t cap) {
  return grid_enumerate(space.size(), k, cap);
}

Forecast project_to_simplex(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return Forecast(std::move(out));
}

}  // namespace screening
