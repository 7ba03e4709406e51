// Brute-force reference computations used to cross-check the solvers.
// Nothing here shares code with the alternating-minimization solver.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fcomp/core.hpp"
#include "fcomp/hypergraph.hpp"

namespace fcomp {

inline constexpr std::size_t kMaxOracleParameters = 4;

/// Number of free channel parameters: sum over positive-probability vertices
/// of (number of containing edges - 1).
inline std::size_t free_channel_parameters(const ProblemInstance& inst, const Hypergraph& g) {
  const auto px = inst.marginal_x();
  std::size_t n = 0;
  for (std::size_t x = 0; x < inst.nx; ++x)
    if (px[x] > 0.0) {
      const auto k = g.edges_containing(x).size();
      if (k > 1) n += k - 1;
    }
  return n;
}

namespace detail {

// Grid points of the (k-1)-simplex with denominators `steps`.
inline std::vector<std::vector<double>> simplex_grid(std::size_t k, std::size_t steps) {
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> parts(k, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i + 1 == k) {
      parts[i] = left;
      std::vector<double> q(k);
      for (std::size_t j = 0; j < k; ++j) q[j] = static_cast<double>(parts[j]) / static_cast<double>(steps);
      out.push_back(std::move(q));
      return;
    }
    for (std::size_t a = 0; a <= left; ++a) {
      parts[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, steps);
  return out;
}

}  // namespace detail

/// Exhaustive grid search over every ambiguous vertex's simplex.  Uses
///   I(W;X|Y) = sum_y p(y) H(W|Y=y) - sum_x p(x) H(W|X=x)
/// with the per-y mixtures accumulated along the search tree.
inline double entropy_oracle_grid(const ProblemInstance& inst, const Hypergraph& g, double step) {
  if (!(step > 0.0 && step <= 0.1)) throw std::invalid_argument("entropy_oracle_grid: step must lie in (0, 0.1]");
  if (free_channel_parameters(inst, g) > kMaxOracleParameters)
    throw std::invalid_argument("entropy_oracle_grid: too many free channel parameters");

  const std::size_t steps = static_cast<std::size_t>(std::llround(1.0 / step));
  const std::size_t m = g.maximal_edges.size();
  const auto px = inst.marginal_x();
  const auto py = inst.marginal_y();

  struct Vertex {
    std::size_t x;
    std::vector<std::size_t> edges;
    std::vector<std::vector<double>> grid;  // candidate rows over `edges`
  };
  std::vector<Vertex> free_vertices;
  // mix[y][w] = sum over fixed vertices of p(x,y) p(w|x)
  std::vector<std::vector<double>> base(inst.ny, std::vector<double>(m, 0.0));
  for (std::size_t x = 0; x < inst.nx; ++x) {
    if (px[x] <= 0.0) continue;
    auto ids = g.edges_containing(x);
    if (ids.size() == 1) {
      for (std::size_t y = 0; y < inst.ny; ++y) base[y][ids[0]] += inst.p[x][y];
    } else {
      Vertex v{x, ids, detail::simplex_grid(ids.size(), steps)};
      free_vertices.push_back(std::move(v));
    }
  }

  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, std::size_t i, const std::vector<std::vector<double>>& mix, double cond) -> void {
    if (i == free_vertices.size()) {
      double hy = 0.0;
      for (std::size_t y = 0; y < inst.ny; ++y) {
        if (py[y] <= 0.0) continue;
        for (std::size_t w = 0; w < m; ++w) {
          const double q = mix[y][w] / py[y];
          if (q > 0.0) hy -= py[y] * q * std::log2(q);
        }
      }
      best = std::min(best, hy - cond);
      return;
    }
    const Vertex& v = free_vertices[i];
    std::vector<std::vector<double>> next = mix;
    for (const auto& row : v.grid) {
      double h = 0.0;
      for (double q : row)
        if (q > 0.0) h -= q * std::log2(q);
      for (std::size_t y = 0; y < inst.ny; ++y) {
        next[y] = mix[y];
        for (std::size_t k = 0; k < v.edges.size(); ++k) next[y][v.edges[k]] += inst.p[v.x][y] * row[k];
      }
      self(self, i + 1, next, cond + px[v.x] * h);
    }
  };
  rec(rec, 0, base, 0.0);
  return std::max(best, 0.0);
}

}  // namespace fcomp
