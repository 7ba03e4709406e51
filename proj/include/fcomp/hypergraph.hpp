// Epsilon-characteristic hypergraph on the source alphabet.
//
// A vertex set S is a hyperedge iff for every side-information symbol y the
// points {f(x, y) : x in S, p(x, y) > 0} fit in a ball of radius epsilon.
// The family is hereditary, so maximal hyperedges are the maximal feasible
// sets of an independence system and are enumerated by depth-first search.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fcomp/core.hpp"
#include "fcomp/geometry.hpp"
#include "json.hpp"

namespace fcomp {

using VertexSet = std::vector<std::size_t>;  // sorted ascending, 0-based

inline constexpr std::size_t kMaxEnumerationVertices = 24;

struct Hypergraph {
  std::size_t nx = 0;
  std::vector<VertexSet> maximal_edges;
  double epsilon = 0.0;

  /// Ids of the edges containing vertex x.
  std::vector<std::size_t> edges_containing(std::size_t x) const {
    std::vector<std::size_t> ids;
    for (std::size_t w = 0; w < maximal_edges.size(); ++w)
      if (std::binary_search(maximal_edges[w].begin(), maximal_edges[w].end(), x)) ids.push_back(w);
    return ids;
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.nx == b.nx && a.maximal_edges == b.maximal_edges;
  }
};

class AmbiguousClustering : public PreconditionError {
 public:
  AmbiguousClustering(std::size_t vertex, std::vector<VertexSet> edges)
      : PreconditionError(describe(vertex, edges)), vertex_(vertex), edges_(std::move(edges)) {}

  std::size_t vertex() const { return vertex_; }
  const std::vector<VertexSet>& edges() const { return edges_; }

 private:
  static std::string describe(std::size_t vertex, const std::vector<VertexSet>& edges) {
    std::string s = "ambiguous clustering: vertex " + std::to_string(vertex) + " lies in " +
                    std::to_string(edges.size()) + " maximal hyperedges";
    for (const auto& e : edges) {
      s += " {";
      for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
      s += "}";
    }
    return s;
  }

  std::size_t vertex_;
  std::vector<VertexSet> edges_;
};

struct Clustering {
  std::vector<VertexSet> edges;                       // the maximal edges of G
  std::vector<std::optional<std::size_t>> assignment;  // vertex -> edge id

  std::size_t edge_of(std::size_t x) const {
    if (x >= assignment.size() || !assignment[x])
      throw PreconditionError("vertex " + std::to_string(x) + " has no cluster assignment");
    return *assignment[x];
  }
};

inline double subset_radius(const ProblemInstance& inst, std::span<const std::size_t> S, std::size_t y) {
  std::vector<Point> pts;
  pts.reserve(S.size());
  for (std::size_t x : S)
    if (inst.p[x][y] > 0.0) pts.push_back(inst.f[x][y]);
  if (pts.size() <= 1) return 0.0;
  return min_enclosing_ball(pts).radius;
}

inline bool is_hyperedge(const ProblemInstance& inst, std::span<const std::size_t> S) {
  for (std::size_t x : S)
    if (x >= inst.nx) throw std::out_of_range("vertex index out of range");
  for (std::size_t y = 0; y < inst.ny; ++y)
    if (subset_radius(inst, S, y) > inst.epsilon + kGeomTol) return false;
  return true;
}

namespace detail {

inline void canonical_sort(std::vector<VertexSet>& edges) {
  std::sort(edges.begin(), edges.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
}

inline VertexSet with_vertex(const VertexSet& s, std::size_t v) {
  VertexSet t = s;
  t.insert(std::upper_bound(t.begin(), t.end(), v), v);
  return t;
}

template <class Visit>
void enumerate_feasible(const ProblemInstance& inst, const VertexSet& current, std::size_t start,
                        Visit&& visit) {
  visit(current);
  for (std::size_t v = start; v < inst.nx; ++v) {
    VertexSet next = with_vertex(current, v);
    if (is_hyperedge(inst, next)) enumerate_feasible(inst, next, v + 1, visit);
  }
}

inline void check_size_guard(const ProblemInstance& inst) {
  if (inst.nx > kMaxEnumerationVertices)
    throw InstanceError("instance too large for exact enumeration: nx = " + std::to_string(inst.nx) +
                        " exceeds " + std::to_string(kMaxEnumerationVertices));
}

}  // namespace detail

inline Hypergraph build_hypergraph(const ProblemInstance& inst) {
  detail::check_size_guard(inst);
  Hypergraph g;
  g.nx = inst.nx;
  g.epsilon = inst.epsilon;

  VertexSet all(inst.nx);
  for (std::size_t x = 0; x < inst.nx; ++x) all[x] = x;
  if (is_hyperedge(inst, all)) {
    g.maximal_edges.push_back(all);
    return g;
  }

  detail::enumerate_feasible(inst, VertexSet{}, 0, [&](const VertexSet& s) {
    if (s.empty()) return;
    for (std::size_t v = 0; v < inst.nx; ++v) {
      if (std::binary_search(s.begin(), s.end(), v)) continue;
      if (is_hyperedge(inst, detail::with_vertex(s, v))) return;
    }
    g.maximal_edges.push_back(s);
  });
  detail::canonical_sort(g.maximal_edges);
  return g;
}

/// Every hyperedge (not only maximal ones), canonically sorted.
inline std::vector<VertexSet> all_hyperedges(const ProblemInstance& inst) {
  detail::check_size_guard(inst);
  std::vector<VertexSet> out;
  detail::enumerate_feasible(inst, VertexSet{}, 0, [&](const VertexSet& s) {
    if (!s.empty()) out.push_back(s);
  });
  detail::canonical_sort(out);
  return out;
}

/// For every y, two symbols with different function values are either both
/// outside the support of y or both inside it.
inline bool check_condition1(const ProblemInstance& inst) {
  for (std::size_t y = 0; y < inst.ny; ++y)
    for (std::size_t a = 0; a < inst.nx; ++a)
      for (std::size_t b = a + 1; b < inst.nx; ++b) {
        if (distance(inst.f[a][y], inst.f[b][y]) <= kGeomTol) continue;
        const bool pa = inst.p[a][y] > 0.0, pb = inst.p[b][y] > 0.0;
        if (pa != pb) return false;
      }
  return true;
}

/// Partition of the positive-probability vertices by their unique maximal
/// edge.  Zero-probability vertices are assigned only when unambiguous.
inline Clustering unique_clustering(const ProblemInstance& inst, const Hypergraph& g) {
  Clustering c;
  c.edges = g.maximal_edges;
  c.assignment.assign(g.nx, std::nullopt);
  const auto px = inst.marginal_x();
  for (std::size_t x = 0; x < g.nx; ++x) {
    const auto ids = g.edges_containing(x);
    if (ids.size() == 1) {
      c.assignment[x] = ids[0];
    } else if (px[x] > 0.0) {
      std::vector<VertexSet> edges;
      for (auto id : ids) edges.push_back(g.maximal_edges[id]);
      throw AmbiguousClustering(x, std::move(edges));
    }
  }
  return c;
}

inline nlohmann::json hypergraph_to_json(const Hypergraph& g) {
  return nlohmann::json{{"epsilon", g.epsilon}, {"maximal_edges", g.maximal_edges}};
}

inline Hypergraph hypergraph_from_json(const nlohmann::json& j, std::size_t nx) {
  Hypergraph g;
  g.nx = nx;
  g.epsilon = j.at("epsilon").get<double>();
  g.maximal_edges = j.at("maximal_edges").get<std::vector<VertexSet>>();
  return g;
}

}  // namespace fcomp
