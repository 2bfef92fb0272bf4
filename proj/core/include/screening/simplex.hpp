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

// Points, mixtures and sampling on the probability simplex over a finite
// state space.

#ifndef SCREENING_SIMPLEX_HPP_
#define SCREENING_SIMPLEX_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace screening {

inline constexpr double kNormalizationTol = 1e-9;
inline constexpr double kNegativeTol = 1e-12;
inline constexpr std::size_t kDefaultGridCap = 1'000'000;

// Every random operation takes its engine explicitly.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of one draw, so the
// stream is identical across standard library implementations.
double unit_uniform(Rng& rng);

// Standard exponential variate by inversion.
double standard_exponential(Rng& rng);

class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);

  // States named "s0", "s1", ...
  static StateSpace numbered(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  std::vector<std::string> labels_;
};

// A probability distribution over the states. Construction validates and
// renormalizes; a Forecast object always lies on the simplex.
class Forecast {
 public:
  // Throws Error{kNegativeEntry | kNotNormalized | kInvalidStateSpace}.
  explicit Forecast(std::vector<double> probs);

  static Forecast uniform(std::size_t n);
  static Forecast vertex(std::size_t n, std::size_t state);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<double>& values() const noexcept { return probs_; }

  // Lexicographic on the probability vector.
  friend auto operator<=>(const Forecast&, const Forecast&) = default;
  friend bool operator==(const Forecast&, const Forecast&) = default;

 private:
  std::vector<double> probs_;
};

std::string to_string(const Forecast& f);

// Checks raw values against a state space. Tiny negatives (above
// -kNegativeTol) are treated as zero; anything lower is an error.
Forecast validate_forecast(std::span<const double> raw, const StateSpace& space);

// Throws Error{kLengthMismatch} when the dimensions differ.
void require_same_size(const Forecast& f, const Forecast& g);

double l2_dist_sq(const Forecast& f, const Forecast& g);
double norm_sq(const Forecast& f);

struct Atom {
  Forecast forecast;
  double weight;
};

// A finitely supported distribution over forecasts.
class MixedStrategy {
 public:
  // Weights must be positive and sum to one within kNormalizationTol; all
  // atoms share one dimension. Throws Error{kInvalidStrategy}.
  explicit MixedStrategy(std::vector<Atom> atoms);

  static MixedStrategy point_mass(Forecast f);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t dimension() const noexcept { return atoms_.front().forecast.size(); }
  bool is_point_mass() const noexcept { return atoms_.size() == 1; }

 private:
  std::vector<Atom> atoms_;
};

Forecast mixed_mean(const MixedStrategy& xi);

// Uniform on the simplex: normalized i.i.d. exponentials.
Forecast sample_simplex_uniform(std::size_t n, Rng& rng);
Forecast sample_simplex_uniform(const StateSpace& space, Rng& rng);

// Number of points of the resolution-k simplex lattice in n dimensions,
// binomial(k + n - 1, n - 1), or nullopt when it exceeds `cap`.
std::optional<std::size_t> grid_size(std::size_t n, std::size_t k,
                                     std::size_t cap = kDefaultGridCap);

// All forecasts with coordinates in {0, 1/k, ..., 1}, in lexicographic
// order. Throws Error{kResolutionTooLarge} when the count exceeds `cap`.
std::vector<Forecast> grid_enumerate(std::size_t n, std::size_t k,
                                     std::size_t cap = kDefaultGridCap);
std::vector<Forecast> grid_enumerate(const StateSpace& space, std::size_t k,
                                     std::size_t cap = kDefaultGridCap);

// Euclidean projection of an arbitrary vector onto the simplex.
Forecast project_to_simplex(std::span<const double> v);

}  // namespace screening

#endif  // SCREENING_SIMPLEX_HPP_
