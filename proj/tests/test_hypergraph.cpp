#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fcomp/fixtures.hpp"
#include "fcomp/hypergraph.hpp"
#include "test_support.hpp"

using namespace fcomp;

namespace {

bool is_subset(const VertexSet& a, const VertexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TEST(IsHyperedge, Example2) {
  const auto inst = fixtures::example2();
  EXPECT_TRUE(is_hyperedge(inst, VertexSet{0, 1}));
  EXPECT_TRUE(is_hyperedge(inst, VertexSet{1, 2}));
  EXPECT_FALSE(is_hyperedge(inst, VertexSet{0, 2}));
  EXPECT_FALSE(is_hyperedge(inst, VertexSet{0, 1, 2}));
  EXPECT_TRUE(is_hyperedge(inst, VertexSet{2}));
  EXPECT_THROW(is_hyperedge(inst, VertexSet{3}), std::out_of_range);
}

TEST(IsHyperedge, Example1IgnoresZeroProbabilityCells) {
  const auto inst = fixtures::example1();
  EXPECT_TRUE(is_hyperedge(inst, VertexSet{1, 2}));
  EXPECT_FALSE(is_hyperedge(inst, VertexSet{0, 1}));
  EXPECT_FALSE(is_hyperedge(inst, VertexSet{0, 2}));
}

TEST(BuildHypergraph, Fig5Regimes) {
  EXPECT_EQ(build_hypergraph(fixtures::fig5(0.5)).maximal_edges, (std::vector<VertexSet>{{0}, {1}, {2}}));
  EXPECT_EQ(build_hypergraph(fixtures::fig5(0.95)).maximal_edges, (std::vector<VertexSet>{{0, 1}, {1, 2}}));
  EXPECT_EQ(build_hypergraph(fixtures::fig5(1.05)).maximal_edges,
            (std::vector<VertexSet>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(build_hypergraph(fixtures::fig5(1.1)).maximal_edges, (std::vector<VertexSet>{{0, 1, 2}}));
}

TEST(BuildHypergraph, Example1) {
  const auto g = build_hypergraph(fixtures::example1());
  EXPECT_EQ(g.maximal_edges, (std::vector<VertexSet>{{1, 2}, {0}}));
  EXPECT_EQ(g.edges_containing(1), (std::vector<std::size_t>{0}));
  EXPECT_EQ(g.edges_containing(0), (std::vector<std::size_t>{1}));
}

TEST(BuildHypergraph, SizeGuard) {
  ProblemInstance inst;
  inst.nx = 25;
  inst.ny = 1;
  inst.dim = 1;
  for (std::size_t x = 0; x < 25; ++x) {
    inst.p.push_back({1.0 / 25});
    inst.f.push_back({Point{static_cast<double>(x)}});
  }
  EXPECT_THROW(build_hypergraph(inst), InstanceError);
  EXPECT_THROW(all_hyperedges(inst), InstanceError);
}

TEST(BuildHypergraph, JsonRoundTrip) {
  const auto g = build_hypergraph(fixtures::fig5(1.05));
  EXPECT_EQ(hypergraph_from_json(hypergraph_to_json(g), 3), g);
}

TEST(Condition1, Examples) {
  EXPECT_TRUE(check_condition1(fixtures::example1()));
  EXPECT_TRUE(check_condition1(fixtures::example2()));
  EXPECT_TRUE(check_condition1(fixtures::fig4_row(0)));

  auto modified = fixtures::example1();
  modified.p[1][1] = 0.0;
  for (auto& row : modified.p)
    for (auto& v : row) v *= 7.0 / 6.0;
  modified.validate();
  EXPECT_FALSE(check_condition1(modified));
}

TEST(UniqueClustering, Example1) {
  const auto inst = fixtures::example1();
  const auto c = unique_clustering(inst, build_hypergraph(inst));
  EXPECT_EQ(c.edge_of(0), 1u);
  EXPECT_EQ(c.edge_of(1), 0u);
  EXPECT_EQ(c.edge_of(2), 0u);
}

TEST(UniqueClustering, Fig4) {
  const auto inst = fixtures::fig4_row(0);
  const auto g = build_hypergraph(inst);
  EXPECT_EQ(g.maximal_edges, (std::vector<VertexSet>{{0, 1}, {2, 3}}));
  const auto c = unique_clustering(inst, g);
  EXPECT_EQ(c.edge_of(0), c.edge_of(1));
  EXPECT_EQ(c.edge_of(2), c.edge_of(3));
  EXPECT_NE(c.edge_of(0), c.edge_of(2));
}

TEST(UniqueClustering, Example2IsAmbiguous) {
  const auto inst = fixtures::example2();
  try {
    unique_clustering(inst, build_hypergraph(inst));
    FAIL() << "expected AmbiguousClustering";
  } catch (const AmbiguousClustering& e) {
    EXPECT_EQ(e.vertex(), 1u);
    EXPECT_EQ(e.edges(), (std::vector<VertexSet>{{0, 1}, {1, 2}}));
  }
}

TEST(UniqueClustering, ZeroProbabilityVertexMayStayUnassigned) {
  auto inst = fixtures::example2();
  inst.p[1] = {0.0, 0.0};
  for (auto& row : inst.p)
    for (auto& v : row) v *= 1.5;
  const auto c = unique_clustering(inst, build_hypergraph(inst));
  EXPECT_FALSE(c.assignment[1].has_value());
  EXPECT_THROW(c.edge_of(1), PreconditionError);
}

TEST(HypergraphProperties, HereditaryAndMaximal) {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 100; ++t) {
    testutil::RandomInstanceSpec spec;
    spec.nx = 2 + static_cast<std::size_t>(t) % 6;
    spec.ny = 1 + static_cast<std::size_t>(t) % 3;
    spec.dim = 1 + static_cast<std::size_t>(t) % 3;
    const auto inst = testutil::random_instance(gen, spec);
    const auto g = build_hypergraph(inst);
    const auto all = all_hyperedges(inst);
    for (const auto& e : all) {
      // every subset obtained by dropping one vertex is an edge
      for (std::size_t i = 0; i < e.size() && e.size() > 1; ++i) {
        VertexSet sub = e;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
        EXPECT_TRUE(is_hyperedge(inst, sub));
      }
      EXPECT_TRUE(std::any_of(g.maximal_edges.begin(), g.maximal_edges.end(),
                              [&](const VertexSet& m) { return is_subset(e, m); }));
    }
    for (std::size_t a = 0; a < g.maximal_edges.size(); ++a)
      for (std::size_t b = 0; b < g.maximal_edges.size(); ++b)
        if (a != b) {
          EXPECT_FALSE(is_subset(g.maximal_edges[a], g.maximal_edges[b]));
        }
    for (std::size_t x = 0; x < inst.nx; ++x) EXPECT_FALSE(g.edges_containing(x).empty());
  }
}

TEST(HypergraphProperties, MonotoneInEpsilon) {
  std::mt19937_64 gen(13);
  for (int t = 0; t < 60; ++t) {
    testutil::RandomInstanceSpec spec;
    spec.nx = 5;
    const auto inst = testutil::random_instance(gen, spec);
    const auto small = all_hyperedges(inst.with_epsilon(0.3));
    const auto large = all_hyperedges(inst.with_epsilon(0.9));
    for (const auto& e : small) EXPECT_NE(std::find(large.begin(), large.end(), e), large.end());
  }
}

TEST(HypergraphProperties, OneDimensionDecidedByPairs) {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 60; ++t) {
    testutil::RandomInstanceSpec spec;
    spec.nx = 6;
    spec.dim = 1;
    const auto inst = testutil::random_instance(gen, spec);
    for (const auto& e : all_hyperedges(inst)) {
      for (std::size_t y = 0; y < inst.ny; ++y) {
        double lo = 1e300, hi = -1e300;
        for (auto x : e)
          if (inst.p[x][y] > 0.0) {
            lo = std::min(lo, inst.f[x][y][0]);
            hi = std::max(hi, inst.f[x][y][0]);
          }
        if (hi >= lo) {
          EXPECT_LE(hi - lo, 2.0 * inst.epsilon + 2e-9);
        }
      }
    }
  }
}
