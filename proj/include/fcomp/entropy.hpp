// Functional epsilon-entropy H_G(X|Y) = min I(W;X|Y) over channels p(w|x)
// supported on the hyperedges that contain x.
//
// Solved by alternating minimization of
//   J(p, r) = sum_{x,y} p(x,y) sum_w p(w|x) log2( p(w|x) / r(w|y) ).
// For fixed p the minimizing r is r(w|y) = sum_x p(x|y) p(w|x), at which
// J equals I(W;X|Y).  For fixed r the minimizing row is
//   p(w|x) ~ prod_y r(w|y)^{p(y|x)}   restricted to w containing x.
// Both steps are exact coordinate minimizations, so the objective never
// increases.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fcomp/core.hpp"
#include "fcomp/geometry.hpp"
#include "fcomp/hypergraph.hpp"
#include "fcomp/rng.hpp"
#include "json.hpp"

namespace fcomp {

struct QuantizerChannel {
  std::vector<VertexSet> edges;  // edge id -> vertex set
  Matrix rows;                   // rows[x][w] = p(w|x)

  /// Total probability of each edge under the source marginal.
  std::vector<double> edge_mass(const ProblemInstance& inst) const {
    std::vector<double> mass(edges.size(), 0.0);
    const auto px = inst.marginal_x();
    for (std::size_t x = 0; x < rows.size(); ++x)
      for (std::size_t w = 0; w < rows[x].size(); ++w) mass[w] += px[x] * rows[x][w];
    return mass;
  }
};

/// Throws when a row puts mass on an edge that does not contain x or a
/// positive-probability row is not normalized.
inline void validate_channel(const ProblemInstance& inst, const QuantizerChannel& ch) {
  validate_channel_rows(inst, ch.rows);
  for (std::size_t x = 0; x < ch.rows.size(); ++x) {
    if (ch.rows[x].size() > ch.edges.size())
      throw std::invalid_argument("channel row " + std::to_string(x) + " is wider than the edge list");
    for (std::size_t w = 0; w < ch.rows[x].size(); ++w)
      if (ch.rows[x][w] > 0.0 &&
          !std::binary_search(ch.edges[w].begin(), ch.edges[w].end(), x))
        throw std::invalid_argument("channel row " + std::to_string(x) + " uses edge " +
                                    std::to_string(w) + " which does not contain it");
  }
}

inline double conditional_mutual_information(const ProblemInstance& inst, const QuantizerChannel& ch) {
  return conditional_mutual_information(inst, ch.rows);
}

struct ReconstructionMap {
  std::vector<std::vector<std::optional<Point>>> g;  // g[w][y]

  bool defined(std::size_t w, std::size_t y) const { return w < g.size() && y < g[w].size() && g[w][y]; }

  const Point& at(std::size_t w, std::size_t y) const {
    if (!defined(w, y))
      throw std::out_of_range("reconstruction undefined for edge " + std::to_string(w) + ", y = " +
                              std::to_string(y));
    return *g[w][y];
  }
};

/// g(w, y) = center of the smallest ball enclosing {f(x,y) : x in w, p(x,y) > 0};
/// left undefined when that set is empty.
inline ReconstructionMap build_reconstruction(const ProblemInstance& inst,
                                              const std::vector<VertexSet>& edges) {
  ReconstructionMap r;
  r.g.assign(edges.size(), std::vector<std::optional<Point>>(inst.ny));
  for (std::size_t w = 0; w < edges.size(); ++w)
    for (std::size_t y = 0; y < inst.ny; ++y) {
      std::vector<Point> pts;
      for (std::size_t x : edges[w])
        if (inst.p[x][y] > 0.0) pts.push_back(inst.f[x][y]);
      if (!pts.empty()) r.g[w][y] = min_enclosing_ball(pts).center;
    }
  return r;
}

inline ReconstructionMap build_reconstruction(const ProblemInstance& inst, const Hypergraph& g) {
  return build_reconstruction(inst, g.maximal_edges);
}

struct SolverOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::uint64_t seed = 0x5EEDULL;
  double init_noise = 0.01;
};

struct EntropySolution {
  double value = 0.0;
  QuantizerChannel channel;
  ReconstructionMap recon;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // objective before the first and after each iteration
};

inline EntropySolution solve_entropy(const ProblemInstance& inst, const std::vector<VertexSet>& edges,
                                     const SolverOptions& opt = {}) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("solve_entropy: tol must be positive");
  const std::size_t m = edges.size();
  const auto px = inst.marginal_x();
  const auto py = inst.marginal_y();

  std::vector<std::vector<std::size_t>> containing(inst.nx);
  for (std::size_t w = 0; w < m; ++w)
    for (std::size_t x : edges[w]) containing.at(x).push_back(w);

  EntropySolution sol;
  sol.channel.edges = edges;
  Matrix& rows = sol.channel.rows;
  rows.assign(inst.nx, std::vector<double>(m, 0.0));

  Rng rng(opt.seed);
  for (std::size_t x = 0; x < inst.nx; ++x) {
    const auto& ids = containing[x];
    if (ids.empty()) {
      if (px[x] > 0.0)
        throw std::invalid_argument("solve_entropy: vertex " + std::to_string(x) + " lies in no edge");
      continue;
    }
    if (px[x] <= 0.0) {
      rows[x][ids.front()] = 1.0;
      continue;
    }
    double sum = 0.0;
    for (auto w : ids) {
      rows[x][w] = 1.0 + opt.init_noise * (2.0 * rng.uniform() - 1.0);
      sum += rows[x][w];
    }
    for (auto w : ids) rows[x][w] /= sum;
  }

  double current = conditional_mutual_information(inst, rows);
  sol.trace.push_back(current);

  Matrix r_wy(inst.ny, std::vector<double>(m));
  std::vector<double> logit(m);
  for (sol.iterations = 0; sol.iterations < opt.max_iter;) {
    for (std::size_t y = 0; y < inst.ny; ++y) {
      std::fill(r_wy[y].begin(), r_wy[y].end(), 0.0);
      if (py[y] <= 0.0) continue;
      for (std::size_t x = 0; x < inst.nx; ++x) {
        const double pxgy = inst.p[x][y] / py[y];
        if (pxgy <= 0.0) continue;
        for (auto w : containing[x]) r_wy[y][w] += pxgy * rows[x][w];
      }
    }
    for (std::size_t x = 0; x < inst.nx; ++x) {
      if (px[x] <= 0.0 || containing[x].size() < 2) continue;
      double best = -std::numeric_limits<double>::infinity();
      for (auto w : containing[x]) {
        double s = 0.0;
        for (std::size_t y = 0; y < inst.ny && s > -std::numeric_limits<double>::infinity(); ++y) {
          if (inst.p[x][y] <= 0.0) continue;
          const double pygx = inst.p[x][y] / px[x];
          s += r_wy[y][w] > 0.0 ? pygx * std::log(r_wy[y][w]) : -std::numeric_limits<double>::infinity();
        }
        logit[w] = s;
        best = std::max(best, s);
      }
      double norm = 0.0;
      for (auto w : containing[x]) {
        rows[x][w] = std::isfinite(logit[w]) ? std::exp(logit[w] - best) : 0.0;
        norm += rows[x][w];
      }
      for (auto w : containing[x]) rows[x][w] /= norm;
    }
    ++sol.iterations;
    const double next = conditional_mutual_information(inst, rows);
    sol.trace.push_back(next);
    const double decrease = current - next;
    current = next;
    if (decrease < opt.tol) {
      sol.converged = true;
      break;
    }
  }
  sol.value = current;
  sol.recon = build_reconstruction(inst, edges);
  return sol;
}

inline EntropySolution solve_entropy(const ProblemInstance& inst, const Hypergraph& g,
                                     double tol = 1e-10, std::size_t max_iter = 10000) {
  SolverOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return solve_entropy(inst, g.maximal_edges, opt);
}

/// Convenience: build G at inst.epsilon and solve.
inline EntropySolution functional_entropy(const ProblemInstance& inst) {
  return solve_entropy(inst, build_hypergraph(inst));
}

/// Zero-distortion check of a (channel, reconstruction) pair: every
/// (x, w, y) with positive probability reconstructs within epsilon.
/// Returns the number of violating triples.
inline std::size_t count_achievability_violations(const ProblemInstance& inst, const QuantizerChannel& ch,
                                                  const ReconstructionMap& recon) {
  std::size_t bad = 0;
  for (std::size_t x = 0; x < inst.nx; ++x)
    for (std::size_t w = 0; w < ch.rows[x].size(); ++w) {
      if (ch.rows[x][w] <= 0.0) continue;
      for (std::size_t y = 0; y < inst.ny; ++y) {
        if (inst.p[x][y] <= 0.0) continue;
        if (!recon.defined(w, y) || distance(recon.at(w, y), inst.f[x][y]) > inst.epsilon + kGeomTol) ++bad;
      }
    }
  return bad;
}

/// Maps an arbitrary zero-distortion auxiliary U to the hyperedge-valued
/// W = w(U) = {x : p(u, x) > 0}.  u_channel[x][u] = p(u|x); u_recon[u][y]
/// is the decoder's output for (u, y).
inline QuantizerChannel refine_channel(const ProblemInstance& inst, const Matrix& u_channel,
                                       const std::vector<std::vector<std::optional<Point>>>& u_recon) {
  validate_channel_rows(inst, u_channel);
  const auto px = inst.marginal_x();
  std::size_t nu = 0;
  for (const auto& r : u_channel) nu = std::max(nu, r.size());

  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t x = 0; x < inst.nx; ++x) {
      if (u >= u_channel[x].size() || u_channel[x][u] <= 0.0) continue;
      for (std::size_t y = 0; y < inst.ny; ++y) {
        if (inst.p[x][y] <= 0.0) continue;
        const bool has = u < u_recon.size() && y < u_recon[u].size() && u_recon[u][y];
        if (!has || distance(*u_recon[u][y], inst.f[x][y]) > inst.epsilon + kGeomTol)
          throw PreconditionError("refine_channel: (u=" + std::to_string(u) + ", x=" + std::to_string(x) +
                                  ", y=" + std::to_string(y) + ") has positive probability and distortion 1");
      }
    }

  QuantizerChannel out;
  std::map<VertexSet, std::size_t> ids;
  std::vector<std::size_t> u_to_w(nu, static_cast<std::size_t>(-1));
  for (std::size_t u = 0; u < nu; ++u) {
    VertexSet w;
    for (std::size_t x = 0; x < inst.nx; ++x)
      if (px[x] > 0.0 && u < u_channel[x].size() && u_channel[x][u] > 0.0) w.push_back(x);
    if (w.empty()) continue;
    auto [it, inserted] = ids.emplace(w, out.edges.size());
    if (inserted) out.edges.push_back(w);
    u_to_w[u] = it->second;
  }
  out.rows.assign(inst.nx, std::vector<double>(out.edges.size(), 0.0));
  for (std::size_t x = 0; x < inst.nx; ++x) {
    if (px[x] <= 0.0) continue;
    for (std::size_t u = 0; u < u_channel[x].size(); ++u)
      if (u_channel[x][u] > 0.0) out.rows[x][u_to_w[u]] += u_channel[x][u];
  }
  return out;
}

inline nlohmann::json solution_to_json(const EntropySolution& s) {
  nlohmann::json recon = nlohmann::json::array();
  for (std::size_t w = 0; w < s.recon.g.size(); ++w)
    for (std::size_t y = 0; y < s.recon.g[w].size(); ++y)
      if (s.recon.g[w][y]) recon.push_back({{"edge", w}, {"y", y}, {"point", *s.recon.g[w][y]}});
  return nlohmann::json{{"value", s.value},
                        {"edges", s.channel.edges},
                        {"rows", s.channel.rows},
                        {"recon", recon},
                        {"iterations", s.iterations},
                        {"converged", s.converged}};
}

}  // namespace fcomp
