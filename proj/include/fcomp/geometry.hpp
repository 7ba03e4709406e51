// Smallest enclosing ball of a finite point set in R^d.
//
// Welzl's randomized incremental recursion.  The support set holds at most
// d + 1 boundary points; the ball through a support set is the circumsphere
// restricted to the support's affine hull.  Degenerate supports (e.g.
// collinear triples in the plane) fall back to the best ball spanned by a
// proper subset of the support.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "fcomp/core.hpp"

namespace fcomp {

struct Ball {
  Point center;
  double radius = 0.0;

  bool contains(std::span<const double> q, double tol = kGeomTol) const {
    return distance(center, q) <= radius + tol;
  }
};

namespace detail {

inline constexpr double kDegenerateTol = 1e-12;

// Solves a (small, dense) linear system in place; nullopt when singular.
inline std::optional<std::vector<double>> solve_linear(std::vector<std::vector<double>> a,
                                                       std::vector<double> b, double scale) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) <= kDegenerateTol * std::max(scale, 1e-300)) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

inline Ball finish_ball(Point center, std::span<const Point> support) {
  double r = 0.0;
  for (const auto& q : support) r = std::max(r, distance(center, q));
  return Ball{std::move(center), r};
}

// Circumsphere of the support within its affine hull.
inline std::optional<Ball> circumsphere(std::span<const Point> support) {
  const Point& origin = support[0];
  const std::size_t k = support.size() - 1;
  const std::size_t d = origin.size();
  std::vector<Point> v(k, Point(d));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < d; ++c) v[i][c] = support[i + 1][c] - origin[c];

  auto dot = [d](const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t c = 0; c < d; ++c) s += a[c] * b[c];
    return s;
  };

  if (k == 2 && d == 2) {
    // Planar triple: reject near-zero area explicitly.
    const double area = 0.5 * std::abs(v[0][0] * v[1][1] - v[0][1] * v[1][0]);
    if (area < kDegenerateTol) return std::nullopt;
  }

  std::vector<std::vector<double>> gram(k, std::vector<double>(k));
  std::vector<double> rhs(k);
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = 2.0 * dot(v[i], v[j]);
    rhs[i] = dot(v[i], v[i]);
    scale = std::max(scale, 2.0 * rhs[i]);
  }
  if (scale == 0.0) return std::nullopt;
  auto lambda = solve_linear(std::move(gram), std::move(rhs), scale);
  if (!lambda) return std::nullopt;
  Point center = origin;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < d; ++c) center[c] += (*lambda)[i] * v[i][c];
  return finish_ball(std::move(center), support);
}

inline Ball ball_from_support(std::span<const Point> support) {
  if (support.empty()) return Ball{Point{}, -1.0};
  if (support.size() == 1) return Ball{support[0], 0.0};
  if (auto b = circumsphere(support)) return *b;
  // Degenerate: smallest ball spanned by a proper subset that covers all.
  std::optional<Ball> best;
  std::vector<Point> sub;
  for (std::size_t skip = 0; skip < support.size(); ++skip) {
    sub.clear();
    for (std::size_t i = 0; i < support.size(); ++i)
      if (i != skip) sub.push_back(support[i]);
    Ball b = ball_from_support(sub);
    bool covers = true;
    for (const auto& q : support) covers = covers && b.contains(q);
    if (covers && (!best || b.radius < best->radius)) best = std::move(b);
  }
  return *best;
}

inline Ball welzl(std::vector<Point>& pts, std::size_t n, std::vector<Point>& support,
                  std::size_t dim) {
  if (n == 0 || support.size() == dim + 1) return ball_from_support(support);
  Ball b = welzl(pts, n - 1, support, dim);
  if (b.radius >= 0.0 && b.contains(pts[n - 1])) return b;
  support.push_back(pts[n - 1]);
  b = welzl(pts, n - 1, support, dim);
  support.pop_back();
  return b;
}

inline std::uint64_t hash_points(std::span<const Point> points) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& q : points)
    for (double c : q) {
      std::uint64_t bits;
      std::memcpy(&bits, &c, sizeof bits);
      h = (h ^ bits) * 1099511628211ULL;
    }
  return h;
}

}  // namespace detail

/// Minimum enclosing ball.  Deterministic: the internal shuffle is seeded
/// from a hash of the input coordinates.
inline Ball min_enclosing_ball(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("min_enclosing_ball: empty point set");
  const std::size_t dim = points[0].size();
  if (dim == 0) throw std::invalid_argument("min_enclosing_ball: zero-dimensional points");
  for (const auto& q : points)
    if (q.size() != dim) throw std::invalid_argument("min_enclosing_ball: dimension mismatch");

  if (dim == 1) {
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                        [](const Point& a, const Point& b) { return a[0] < b[0]; });
    const double a = (*lo)[0], b = (*hi)[0];
    return Ball{Point{a + (b - a) / 2.0}, (b - a) / 2.0};
  }

  std::vector<Point> pts(points.begin(), points.end());
  std::mt19937_64 gen(detail::hash_points(points));
  std::shuffle(pts.begin(), pts.end(), gen);
  std::vector<Point> support;
  support.reserve(dim + 1);
  return detail::welzl(pts, pts.size(), support, dim);
}

/// Exhaustive planar oracle: every pair (as a diameter) and every
/// non-degenerate triple (circumcircle); smallest covering candidate wins.
/// Intended for verification only.
inline Ball ball_oracle_bruteforce(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("ball_oracle_bruteforce: empty point set");
  for (const auto& q : points)
    if (q.size() != 2) throw std::invalid_argument("ball_oracle_bruteforce: requires dimension 2");
  if (points.size() > 12) throw std::invalid_argument("ball_oracle_bruteforce: at most 12 points");

  const std::size_t n = points.size();
  std::optional<Ball> best;
  auto consider = [&](Ball b) {
    for (const auto& q : points)
      if (distance(b.center, q) > b.radius + kGeomTol) return;
    if (!best || b.radius < best->radius) best = std::move(b);
  };
  if (n == 1) return Ball{points[0], 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point& a = points[i];
      const Point& b = points[j];
      Point c{(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0};
      const double r = std::hypot(a[0] - b[0], a[1] - b[1]) / 2.0;
      consider(Ball{c, r});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point& a = points[i];
        const Point& b = points[j];
        const Point& c = points[k];
        // Circumcenter by the standard determinant formula.
        const double bx = b[0] - a[0], by = b[1] - a[1];
        const double cx = c[0] - a[0], cy = c[1] - a[1];
        const double det = 2.0 * (bx * cy - by * cx);
        if (std::abs(det) / 4.0 < 1e-12) continue;
        const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
        const double ux = (cy * b2 - by * c2) / det;
        const double uy = (bx * c2 - cx * b2) / det;
        consider(Ball{Point{a[0] + ux, a[1] + uy}, std::hypot(ux, uy)});
      }
  return *best;
}

}  // namespace fcomp
