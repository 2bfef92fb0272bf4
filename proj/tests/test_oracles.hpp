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

// Test-only brute-force references. Nothing here calls the solver paths it
// is used to check.

#ifndef SCREENING_TESTS_TEST_ORACLES_HPP_
#define SCREENING_TESTS_TEST_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "screening/simplex.hpp"

namespace screening::testing {

using Point = std::vector<double>;

inline double sq_dist(const Point& a, const Point& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc;
}

// Resolution-k lattice by nested loops, n in {2, 3}.
inline std::vector<Point> lattice(std::size_t n, int k) {
  std::vector<Point> out;
  if (n == 2) {
    for (int i = 0; i <= k; ++i) out.push_back({double(i) / k, double(k - i) / k});
  } else {
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; i + j <= k; ++j) {
        out.push_back({double(i) / k, double(j) / k, double(k - i - j) / k});
      }
    }
  }
  return out;
}

// min over lattice centers of max squared distance to `pts`.
inline double grid_minmax_sq(const std::vector<Point>& pts, int k) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : lattice(pts.front().size(), k)) {
    double far = 0.0;
    for (const auto& p : pts) far = std::max(far, sq_dist(p, c));
    best = std::min(best, far);
  }
  return best;
}

// Uniform simplex point from sorted uniform gaps; a different construction
// from the library's exponential normalization.
inline Forecast random_forecast(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(u(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = cuts[i + 1] - cuts[i];
  return Forecast(p);
}

// n = 3 ball boundary by angle sweep in the plane sum(x) = 1, clipped to the
// simplex by bisection along each ray.
inline std::vector<Point> ball_boundary3(const Point& c, double r, int samples) {
  const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
  const Point u1{1 / s2, -1 / s2, 0}, u2{1 / s6, 1 / s6, -2 / s6};
  std::vector<Point> out;
  for (int j = 0; j < samples; ++j) {
    const double a = 2 * M_PI * j / samples;
    Point d(3);
    for (int i = 0; i < 3; ++i) d[i] = std::cos(a) * u1[i] + std::sin(a) * u2[i];
    double lo = 0.0, hi = r;
    auto inside = [&](double t) {
      for (int i = 0; i < 3; ++i) {
        if (c[i] + t * d[i] < 0.0) return false;
      }
      return true;
    };
    if (!inside(hi)) {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) ? lo : hi) = mid;
      }
      hi = lo;
    }
    Point p(3);
    for (int i = 0; i < 3; ++i) p[i] = std::max(0.0, c[i] + hi * d[i]);
    out.push_back(p);
  }
  return out;
}

}  // namespace screening::testing

#endif  // SCREENING_TESTS_TEST_ORACLES_HPP_
