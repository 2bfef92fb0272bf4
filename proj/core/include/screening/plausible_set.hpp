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

// Sets of forecasts an uninformed expert deems plausible, and the geometry
// (diameter, Chebyshev center) that drives its worst-case payoff.

#ifndef SCREENING_PLAUSIBLE_SET_HPP_
#define SCREENING_PLAUSIBLE_SET_HPP_

#include <cstddef>
#include <variant>
#include <vector>

#include "screening/simplex.hpp"

namespace screening {

// Closed-set membership and distinctness tolerance (L2 units).
inline constexpr double kMembershipTol = 1e-9;

struct FiniteSet {
  std::vector<Forecast> forecasts;
};

// {f in simplex : ||f - center|| <= radius}.
struct Ball {
  Forecast center;
  double radius;
};

class PlausibleSet {
 public:
  // Throws Error{kInvalidSet} on an empty list, mixed dimensions or
  // duplicate forecasts.
  static PlausibleSet finite(std::vector<Forecast> forecasts);
  // Throws Error{kInvalidSet} unless radius is finite and positive.
  static PlausibleSet ball(Forecast center, double radius);

  const std::variant<FiniteSet, Ball>& shape() const noexcept { return shape_; }
  const FiniteSet* as_finite() const noexcept { return std::get_if<FiniteSet>(&shape_); }
  const Ball* as_ball() const noexcept { return std::get_if<Ball>(&shape_); }
  std::size_t dimension() const noexcept;

 private:
  explicit PlausibleSet(std::variant<FiniteSet, Ball> shape)
      : shape_(std::move(shape)) {}

  std::variant<FiniteSet, Ball> shape_;
};

bool contains(const PlausibleSet& theta, const Forecast& f);

// True when part of the ball lies outside the simplex.
bool is_clipped(const Ball& ball);

// Points where rays from the ball center leave ball-intersect-simplex. The
// set is star-shaped around its center, so these cover the boundary. n = 2
// always yields the two exact endpoints.
std::vector<Forecast> boundary_sample(const Ball& ball, std::size_t directions);

// Boundary resolution used for clipped balls at a given tolerance.
std::size_t boundary_resolution(const Ball& ball, double tol);

// Maximum squared distance between two members. Exact for finite sets and
// uncut balls; clipped balls use a boundary sample.
double diameter_sq(const PlausibleSet& theta);

struct ChebyshevResult {
  Forecast center;
  double radius_sq;
  int iterations;
  bool certified;
};

// Minimizes max_{f in theta} ||f - c||^2 over c in the simplex. Uncut
// balls return their own center and radius. Finite sets, and clipped balls
// replaced by a boundary sample, are solved as a minimum enclosing ball of
// points: Frank-Wolfe with away steps on the dual, then a support search
// over circumcenters of small subsets of the farthest points.
//
// certified is set when the primal-dual gap is at most `tol`, or when the
// support search lands inside the hull of equidistant farthest elements of
// a finite set (an exact optimality certificate). On max_iter exhaustion the
// best center found is returned with certified = false.
ChebyshevResult chebyshev(const PlausibleSet& theta, double tol = 1e-8,
                          int max_iter = 20000);

// A member of theta farthest from `from`, lexicographically smallest among
// ties.
Forecast farthest_point(const PlausibleSet& theta, const Forecast& from);

// Members used when a finite stand-in for theta is needed: the elements of
// a finite set, or a boundary sample of a ball.
std::vector<Forecast> extreme_points(const PlausibleSet& theta,
                                     std::size_t directions);

// Finite sets draw uniformly among elements. Balls use rejection sampling
// from the uniform simplex; after 10^4 rejections a Gaussian perturbation
// of the center is projected back and pulled inside the ball.
Forecast sample_from(const PlausibleSet& theta, Rng& rng);

}  // namespace screening

#endif  // SCREENING_PLAUSIBLE_SET_HPP_
