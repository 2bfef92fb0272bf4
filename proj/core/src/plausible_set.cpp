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

#include "screening/plausible_set.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "screening/error.hpp"

namespace screening {
namespace {

constexpr std::size_t kMinBoundarySamples = 64;
constexpr std::size_t kMaxBoundarySamples = 20000;
constexpr std::size_t kDiameterSamples = 1500;
constexpr std::size_t kSupportPool = 12;
constexpr int kMaxRejections = 10000;

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double dist_sq(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void normalize(Vec& v) {
  const double len = std::sqrt(dot(v, v));
  for (double& x : v) x /= len;
}

// Orthonormal basis of {x : sum(x) = 0}, by Gram-Schmidt on e_i - e_{n-1}.
std::vector<Vec> tangent_basis(std::size_t n) {
  std::vector<Vec> basis;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Vec v(n, 0.0);
    v[i] = 1.0;
    v[n - 1] = -1.0;
    for (const auto& b : basis) {
      const double proj = dot(v, b);
      for (std::size_t j = 0; j < n; ++j) v[j] -= proj * b[j];
    }
    normalize(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Unit tangent direction pointing toward vertex i.
Vec toward_vertex(std::size_t n, std::size_t i) {
  Vec v(n, -1.0 / static_cast<double>(n));
  v[i] += 1.0;
  normalize(v);
  return v;
}

std::vector<Vec> tangent_directions(std::size_t n, std::size_t count) {
  std::vector<Vec> dirs;
  if (n == 2) {
    const double h = std::numbers::sqrt2 / 2.0;
    dirs.push_back({h, -h});
    dirs.push_back({-h, h});
    return dirs;
  }
  const auto basis = tangent_basis(n);
  if (n == 3) {
    for (std::size_t j = 0; j < count; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(count);
      Vec v(n);
      for (std::size_t k = 0; k < n; ++k) {
        v[k] = std::cos(angle) * basis[0][k] + std::sin(angle) * basis[1][k];
      }
      dirs.push_back(std::move(v));
    }
    return dirs;
  }
  // Toward and away from every vertex, along every edge, then a fixed
  // pseudo-random fill.
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = toward_vertex(n, i);
    Vec w = v;
    for (double& x : w) x = -x;
    dirs.push_back(std::move(v));
    dirs.push_back(std::move(w));
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Vec e(n, 0.0);
      e[i] = std::numbers::sqrt2 / 2.0;
      e[j] = -std::numbers::sqrt2 / 2.0;
      dirs.push_back(std::move(e));
    }
  }
  Rng rng(0x5c7ee9b1ULL);
  std::normal_distribution<double> gauss;
  while (dirs.size() < count) {
    Vec v(n, 0.0);
    for (const auto& b : basis) {
      const double z = gauss(rng);
      for (std::size_t k = 0; k < n; ++k) v[k] += z * b[k];
    }
    normalize(v);
    dirs.push_back(std::move(v));
  }
  return dirs;
}

Forecast clean_forecast(Vec v) {
  for (double& x : v) {
    if (x < 0.0 && x > -1e-9) x = 0.0;
  }
  return Forecast(std::move(v));
}

// Solves the small dense system a x = b in place; false when singular.
bool solve_dense(std::vector<Vec>& a, Vec& b) {
  const std::size_t k = b.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(a[i][i]));
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) <= 1e-12 * scale) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < k; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t i = k; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < k; ++c) acc -= a[i][c] * b[c];
    b[i] = acc / a[i][i];
  }
  return true;
}

struct Circumcenter {
  Vec center;
  bool inside_hull;
};

// Center of the smallest sphere through all points of `support` within
// their affine hull.
std::optional<Circumcenter> circumcenter(const std::vector<const Vec*>& support) {
  const Vec& origin = *support.front();
  const std::size_t n = origin.size();
  const std::size_t k = support.size() - 1;
  if (k == 0) return Circumcenter{origin, true};
  std::vector<Vec> edges(k, Vec(n));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) edges[j][i] = (*support[j + 1])[i] - origin[i];
  }
  std::vector<Vec> gram(k, Vec(k));
  Vec rhs(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) gram[a][b] = dot(edges[a], edges[b]);
    rhs[a] = 0.5 * gram[a][a];
  }
  if (!solve_dense(gram, rhs)) return std::nullopt;
  Vec center = origin;
  double origin_weight = 1.0;
  bool inside = true;
  for (std::size_t j = 0; j < k; ++j) {
    origin_weight -= rhs[j];
    if (rhs[j] < -1e-12) inside = false;
    for (std::size_t i = 0; i < n; ++i) center[i] += rhs[j] * edges[j][i];
  }
  if (origin_weight < -1e-12) inside = false;
  return Circumcenter{std::move(center), inside};
}

// max_i ||p_i - c||^2 and the first index attaining it.
std::pair<double, std::size_t> farthest(const std::vector<Vec>& cloud, const Vec& c) {
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double d = dist_sq(cloud[i], c);
    if (d > best) {
      best = d;
      arg = i;
    }
  }
  return {best, arg};
}

struct SupportSearch {
  Vec center;
  double radius_sq;
  bool certificate;
};

// Candidate support points around `center`: the current farthest points,
// then a spread-out selection (farthest-point sampling) among the points
// within 5% of the current maximum.
std::vector<const Vec*> support_pool(const std::vector<Vec>& cloud, const Vec& center) {
  std::vector<std::size_t> order(cloud.size());
  std::vector<double> d2(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    order[i] = i;
    d2[i] = dist_sq(cloud[i], center);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d2[a] > d2[b]; });
  std::vector<const Vec*> pool;
  auto far_enough = [&](const Vec& p) {
    for (const Vec* q : pool) {
      if (dist_sq(*q, p) <= kMembershipTol * kMembershipTol) return false;
    }
    return true;
  };
  const std::size_t leading = cloud.size() <= kSupportPool ? kSupportPool : kSupportPool / 3;
  for (std::size_t idx : order) {
    if (pool.size() == leading) break;
    if (far_enough(cloud[idx])) pool.push_back(&cloud[idx]);
  }
  const double cutoff = 0.95 * d2[order.front()];
  std::vector<std::size_t> near;
  for (std::size_t idx : order) {
    if (d2[idx] < cutoff) break;
    near.push_back(idx);
  }
  while (pool.size() < kSupportPool) {
    const Vec* pick = nullptr;
    double spread = 0.0;
    for (std::size_t idx : near) {
      double closest = std::numeric_limits<double>::infinity();
      for (const Vec* q : pool) closest = std::min(closest, dist_sq(*q, cloud[idx]));
      if (closest > spread) {
        spread = closest;
        pick = &cloud[idx];
      }
    }
    if (pick == nullptr || spread <= kMembershipTol * kMembershipTol) break;
    pool.push_back(pick);
  }
  return pool;
}

// Best circumcenter over every subset (up to size n) of the pool that
// contains its own center.
std::optional<SupportSearch> best_support(const std::vector<Vec>& cloud,
                                          const std::vector<const Vec*>& pool,
                                          std::size_t n, double bound) {
  std::optional<SupportSearch> best;
  const double slack = 1e-12 * std::max(1.0, bound);
  const std::uint32_t masks = 1u << pool.size();
  for (std::uint32_t mask = 1; mask < masks; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > n) continue;
    std::vector<const Vec*> support;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (mask & (1u << i)) support.push_back(pool[i]);
    }
    const auto cc = circumcenter(support);
    if (!cc || !cc->inside_hull) continue;
    const double r_sq = dist_sq(*support.front(), cc->center);
    // The cloud maximum is at least the pool maximum; skip the full scan
    // when the pool alone already rules the candidate out.
    double pool_max = r_sq;
    for (const Vec* q : pool) pool_max = std::max(pool_max, dist_sq(*q, cc->center));
    if (pool_max > bound + slack) continue;
    const double value = farthest(cloud, cc->center).first;
    const bool encloses = value <= r_sq + 1e-12 * std::max(1.0, r_sq);
    if (!best || value < best->radius_sq) {
      best = SupportSearch{cc->center, value, encloses};
    } else if (encloses && value <= best->radius_sq) {
      best->certificate = true;
    }
  }
  return best;
}

// Active-set refinement: rebuild the pool around each improved center until
// no subset improves on it.
std::optional<SupportSearch> support_search(const std::vector<Vec>& cloud,
                                            const Vec& start) {
  constexpr int kRounds = 40;
  Vec center = start;
  double value = farthest(cloud, center).first;
  std::optional<SupportSearch> best;
  for (int round = 0; round < kRounds; ++round) {
    auto found = best_support(cloud, support_pool(cloud, center), start.size(), value);
    if (!found) break;
    if (found->radius_sq >= value) {
      if (best && found->certificate && found->radius_sq <= best->radius_sq) {
        best->certificate = true;
      }
      break;
    }
    center = found->center;
    value = found->radius_sq;
    best = std::move(found);
    if (best->certificate) break;
  }
  return best;
}

struct DualSolve {
  Vec center;
  double primal;
  double dual;
  int iterations;
};

// Frank-Wolfe with away steps on the dual of the minimum enclosing ball
// problem: maximize sum_i w_i ||p_i||^2 - ||sum_i w_i p_i||^2 over weights
// w in the unit simplex. At c = sum_i w_i p_i the primal value
// max_i ||p_i - c||^2 bounds the optimum from above and the dual value
// sum_i w_i ||p_i - c||^2 from below. c is a convex combination of the
// cloud, so it stays in the probability simplex.
DualSolve enclosing_ball_dual(const std::vector<Vec>& cloud, double tol, int max_iter) {
  const std::size_t m = cloud.size();
  const std::size_t n = cloud.front().size();
  std::vector<double> w(m, 0.0);
  const std::size_t a = farthest(cloud, cloud.front()).second;
  const std::size_t b = farthest(cloud, cloud[a]).second;
  w[a] += 0.5;
  w[b] += 0.5;

  Vec c(n);
  auto refresh = [&] {
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (w[i] == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) c[k] += w[i] * cloud[i][k];
    }
  };
  refresh();

  int it = 0;
  for (;;) {
    double primal = -1.0;
    double dual = 0.0;
    double near_d = std::numeric_limits<double>::infinity();
    std::size_t far = 0;
    std::size_t near = m;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = dist_sq(cloud[i], c);
      if (d > primal) {
        primal = d;
        far = i;
      }
      if (w[i] > 0.0) {
        dual += w[i] * d;
        if (d < near_d) {
          near_d = d;
          near = i;
        }
      }
    }
    if (primal - dual <= tol || it >= max_iter) return {c, primal, dual, it};
    ++it;

    const double up = primal - dual;
    const double down = dual - near_d;
    if (up >= down || w[near] >= 1.0) {
      const double alpha = std::min(1.0, up / (2.0 * primal));
      for (double& x : w) x *= 1.0 - alpha;
      w[far] += alpha;
      for (std::size_t k = 0; k < n; ++k) c[k] += alpha * (cloud[far][k] - c[k]);
    } else {
      const double limit = w[near] / (1.0 - w[near]);
      const double alpha = near_d > 0.0 ? std::min(limit, down / (2.0 * near_d)) : limit;
      for (double& x : w) x *= 1.0 + alpha;
      w[near] = alpha == limit ? 0.0 : w[near] - alpha;
      for (std::size_t k = 0; k < n; ++k) c[k] += alpha * (c[k] - cloud[near][k]);
    }
    if (it % 64 == 0) refresh();
  }
}

// Points standing in for theta: the elements of a finite set or a
// boundary sample of a clipped ball.
std::vector<Vec> point_cloud(const PlausibleSet& theta, double tol) {
  std::vector<Vec> cloud;
  if (const auto* set = theta.as_finite()) {
    for (const auto& f : set->forecasts) cloud.push_back(f.values());
  } else {
    const Ball& ball = *theta.as_ball();
    for (const auto& f : boundary_sample(ball, boundary_resolution(ball, tol))) {
      cloud.push_back(f.values());
    }
  }
  return cloud;
}

}  // namespace

PlausibleSet PlausibleSet::finite(std::vector<Forecast> forecasts) {
  if (forecasts.empty()) {
    throw Error(ErrorCode::kInvalidSet, "finite set needs at least one forecast");
  }
  const std::size_t n = forecasts.front().size();
  for (std::size_t i = 0; i < forecasts.size(); ++i) {
    if (forecasts[i].size() != n) {
      throw Error(ErrorCode::kInvalidSet, "forecasts differ in dimension");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::sqrt(l2_dist_sq(forecasts[i], forecasts[j])) <= kMembershipTol) {
        throw Error(ErrorCode::kInvalidSet,
                    "forecasts " + std::to_string(j) + " and " +
                        std::to_string(i) + " coincide");
      }
    }
  }
  return PlausibleSet(FiniteSet{std::move(forecasts)});
}

PlausibleSet PlausibleSet::ball(Forecast center, double radius) {
  if (!std::isfinite(radius) || radius <= 0.0) {
    throw Error(ErrorCode::kInvalidSet, "ball radius must be positive");
  }
  return PlausibleSet(Ball{std::move(center), radius});
}

std::size_t PlausibleSet::dimension() const noexcept {
  if (const auto* set = as_finite()) return set->forecasts.front().size();
  return as_ball()->center.size();
}

bool contains(const PlausibleSet& theta, const Forecast& f) {
  if (const auto* set = theta.as_finite()) {
    return std::any_of(set->forecasts.begin(), set->forecasts.end(),
                       [&](const Forecast& g) {
                         return std::sqrt(l2_dist_sq(f, g)) <= kMembershipTol;
                       });
  }
  const Ball& ball = *theta.as_ball();
  return std::sqrt(l2_dist_sq(f, ball.center)) <= ball.radius + kMembershipTol;
}

bool is_clipped(const Ball& ball) {
  const double n = static_cast<double>(ball.center.size());
  const double reach = ball.radius * std::sqrt((n - 1.0) / n);
  return std::any_of(ball.center.probs().begin(), ball.center.probs().end(),
                     [&](double c) { return c < reach; });
}

std::vector<Forecast> boundary_sample(const Ball& ball, std::size_t directions) {
  const Vec& c = ball.center.values();
  std::vector<Forecast> out;
  for (const auto& d : tangent_directions(c.size(), directions)) {
    double t = ball.radius;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (d[i] < 0.0) t = std::min(t, c[i] / -d[i]);
    }
    Vec p(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) p[i] = c[i] + t * d[i];
    out.push_back(clean_forecast(std::move(p)));
  }
  return out;
}

std::size_t boundary_resolution(const Ball& ball, double tol) {
  // Inscribed polygon error in the radius is about r * dtheta^2 / 8.
  const double wanted =
      2.0 * std::numbers::pi * std::sqrt(ball.radius / (8.0 * tol));
  if (!std::isfinite(wanted) || wanted > static_cast<double>(kMaxBoundarySamples)) {
    return kMaxBoundarySamples;
  }
  return std::max(kMinBoundarySamples, static_cast<std::size_t>(std::ceil(wanted)));
}

double diameter_sq(const PlausibleSet& theta) {
  std::vector<Forecast> points;
  if (const auto* set = theta.as_finite()) {
    points = set->forecasts;
  } else {
    const Ball& ball = *theta.as_ball();
    if (!is_clipped(ball)) return 4.0 * ball.radius * ball.radius;
    points = boundary_sample(ball, kDiameterSamples);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, l2_dist_sq(points[i], points[j]));
    }
  }
  return best;
}

ChebyshevResult chebyshev(const PlausibleSet& theta, double tol, int max_iter) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "chebyshev tolerance must be positive");
  }
  if (const auto* ball = theta.as_ball(); ball != nullptr && !is_clipped(*ball)) {
    return ChebyshevResult{ball->center, ball->radius * ball->radius, 0, true};
  }
  const std::vector<Vec> cloud = point_cloud(theta, tol);
  const DualSolve solve = enclosing_ball_dual(cloud, tol, max_iter);
  Vec center = solve.center;
  double best = solve.primal;
  bool certificate = false;
  if (auto found = support_search(cloud, center)) {
    Vec polished = project_to_simplex(found->center).values();
    const double value = farthest(cloud, polished).first;
    if (value <= best) {
      best = value;
      center = std::move(polished);
      certificate = found->certificate && theta.as_finite() != nullptr;
    }
  }
  const bool certified = certificate || best - solve.dual <= tol;
  return ChebyshevResult{clean_forecast(std::move(center)), best, solve.iterations, certified};
}

Forecast farthest_point(const PlausibleSet& theta, const Forecast& from) {
  std::vector<Forecast> candidates;
  if (const auto* set = theta.as_finite()) {
    candidates = set->forecasts;
  } else {
    const Ball& ball = *theta.as_ball();
    if (!is_clipped(ball)) {
      // The farthest point of a full ball is unique unless `from` is its
      // center; then every boundary point ties and the lexicographically
      // smallest one minimizes the first coordinate.
      const std::size_t n = from.size();
      Vec away(n);
      const double gap = std::sqrt(l2_dist_sq(from, ball.center));
      if (gap > 1e-12) {
        for (std::size_t i = 0; i < n; ++i) away[i] = (ball.center[i] - from[i]) / gap;
      } else {
        away = toward_vertex(n, 0);
        for (double& x : away) x = -x;
      }
      Vec p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = ball.center[i] + ball.radius * away[i];
      return clean_forecast(std::move(p));
    }
    candidates = boundary_sample(ball, kMaxBoundarySamples);
  }
  const Forecast* best = nullptr;
  double best_d = -1.0;
  for (const auto& f : candidates) {
    const double d = l2_dist_sq(f, from);
    if (d > best_d + 1e-12) {
      best = &f;
      best_d = d;
    } else if (d >= best_d - 1e-12 && f < *best) {
      best = &f;
      best_d = std::max(best_d, d);
    }
  }
  return *best;
}

std::vector<Forecast> extreme_points(const PlausibleSet& theta,
                                     std::size_t directions) {
  if (const auto* set = theta.as_finite()) return set->forecasts;
  return boundary_sample(*theta.as_ball(), directions);
}

Forecast sample_from(const PlausibleSet& theta, Rng& rng) {
  if (const auto* set = theta.as_finite()) {
    const auto& fs = set->forecasts;
    const auto idx = static_cast<std::size_t>(unit_uniform(rng) *
                                              static_cast<double>(fs.size()));
    return fs[std::min(idx, fs.size() - 1)];
  }
  const Ball& ball = *theta.as_ball();
  const std::size_t n = ball.center.size();
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    Forecast draw = sample_simplex_uniform(n, rng);
    if (contains(theta, draw)) return draw;
  }
  std::normal_distribution<double> gauss(0.0, ball.radius / std::sqrt(static_cast<double>(n)));
  Vec p = ball.center.values();
  for (double& x : p) x += gauss(rng);
  Vec q = project_to_simplex(p).values();
  const double gap = std::sqrt(dist_sq(q, ball.center.values()));
  if (gap > ball.radius) {
    const double shrink = ball.radius / gap * (1.0 - 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      q[i] = ball.center[i] + shrink * (q[i] - ball.center[i]);
    }
  }
  return clean_forecast(std::move(q));
}

}  // namespace screening
