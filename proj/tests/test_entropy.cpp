#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fcomp/entropy.hpp"
#include "fcomp/fixtures.hpp"
#include "fcomp/oracles.hpp"
#include "test_support.hpp"

using namespace fcomp;

namespace {

const double kLog3 = std::log2(3.0);

ProblemInstance permuted(const ProblemInstance& inst, const std::vector<std::size_t>& perm) {
  ProblemInstance out = inst;
  for (std::size_t x = 0; x < inst.nx; ++x) {
    out.p[perm[x]] = inst.p[x];
    out.f[perm[x]] = inst.f[x];
  }
  return out;
}

}  // namespace

TEST(SolveEntropy, Fig5Regimes) {
  EXPECT_NEAR(functional_entropy(fixtures::fig5(0.5)).value, kLog3, 1e-6);
  EXPECT_NEAR(functional_entropy(fixtures::fig5(0.95)).value, 2.0 / 3.0, 1e-6);
  EXPECT_NEAR(functional_entropy(fixtures::fig5(1.05)).value, kLog3 - 1.0, 1e-6);
  EXPECT_NEAR(functional_entropy(fixtures::fig5(1.1)).value, 0.0, 1e-12);
}

TEST(SolveEntropy, Fig4IsBinaryEntropyOfClusterMass) {
  const auto sol = functional_entropy(fixtures::fig4_row(0));
  EXPECT_NEAR(sol.value, binary_entropy(1.0 / 3.0), 1e-9);
  EXPECT_TRUE(sol.converged);
}

TEST(SolveEntropy, UniqueClusteringGivesQuantizedEntropy) {
  for (std::size_t row : {0u, 1u, 3u}) {
    const auto inst = fixtures::fig4_row(row);
    const auto pmf = fixtures::fig4_pmfs()[row];
    const double q0 = pmf[0] + pmf[1];
    EXPECT_NEAR(functional_entropy(inst).value, binary_entropy(q0), 1e-9) << row;
  }
}

TEST(SolveEntropy, Example1) {
  const auto inst = fixtures::example1();
  // W is determined by X; H(W|Y) with q(X) = [X != 1].
  double expected = 0.0;
  const auto py = inst.marginal_y();
  for (std::size_t y = 0; y < inst.ny; ++y) {
    const double a = inst.p[0][y] / py[y];
    expected += py[y] * binary_entropy(a);
  }
  EXPECT_NEAR(functional_entropy(inst).value, expected, 1e-9);
}

TEST(SolveEntropy, TraceIsNonincreasing) {
  std::mt19937_64 gen(99);
  for (int t = 0; t < 40; ++t) {
    testutil::RandomInstanceSpec spec;
    spec.nx = 5;
    spec.ny = 3;
    const auto inst = testutil::random_instance(gen, spec);
    const auto sol = functional_entropy(inst);
    ASSERT_FALSE(sol.trace.empty());
    for (std::size_t i = 1; i < sol.trace.size(); ++i) EXPECT_LE(sol.trace[i], sol.trace[i - 1] + 1e-12);
    EXPECT_NEAR(sol.trace.back(), sol.value, 0.0);
  }
}

TEST(SolveEntropy, OutputIsAchievable) {
  std::mt19937_64 gen(101);
  for (int t = 0; t < 60; ++t) {
    testutil::RandomInstanceSpec spec;
    spec.nx = 2 + static_cast<std::size_t>(t) % 5;
    spec.ny = 1 + static_cast<std::size_t>(t) % 3;
    spec.dim = 1 + static_cast<std::size_t>(t) % 2;
    const auto inst = testutil::random_instance(gen, spec);
    const auto sol = functional_entropy(inst);
    validate_channel(inst, sol.channel);
    EXPECT_EQ(count_achievability_violations(inst, sol.channel, sol.recon), 0u);
    EXPECT_NEAR(conditional_mutual_information(inst, sol.channel), sol.value, 1e-12);
  }
}

TEST(SolveEntropy, AllHyperedgesMatchMaximalOnly) {
  std::mt19937_64 gen(202);
  for (int t = 0; t < 25; ++t) {
    testutil::RandomInstanceSpec spec;
    spec.nx = 4;
    spec.ny = 2;
    const auto inst = testutil::random_instance(gen, spec);
    const double maximal = functional_entropy(inst).value;
    const double all = solve_entropy(inst, all_hyperedges(inst)).value;
    EXPECT_NEAR(maximal, all, 1e-6);
  }
}

TEST(SolveEntropy, RelabelingInvariant) {
  std::mt19937_64 gen(303);
  for (int t = 0; t < 20; ++t) {
    testutil::RandomInstanceSpec spec;
    spec.nx = 5;
    const auto inst = testutil::random_instance(gen, spec);
    std::vector<std::size_t> perm(inst.nx);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    EXPECT_NEAR(functional_entropy(inst).value, functional_entropy(permuted(inst, perm)).value, 1e-6);
  }
}

TEST(SolveEntropy, RejectsUncoveredVertex) {
  const auto inst = fixtures::fig5();
  EXPECT_THROW(solve_entropy(inst, std::vector<VertexSet>{{0, 1}}), std::invalid_argument);
  SolverOptions bad;
  bad.tol = 0.0;
  EXPECT_THROW(solve_entropy(inst, std::vector<VertexSet>{{0}, {1}, {2}}, bad), std::invalid_argument);
}

TEST(GridOracle, AgreesWithSolver) {
  std::mt19937_64 gen(404);
  int checked = 0, four_param = 0;
  for (int t = 0; t < 400 && checked < 30; ++t) {
    testutil::RandomInstanceSpec spec;
    spec.nx = 3 + static_cast<std::size_t>(t) % 3;
    spec.ny = 1 + static_cast<std::size_t>(t) % 2;
    const auto inst = testutil::random_instance(gen, spec);
    const auto g = build_hypergraph(inst);
    const auto k = free_channel_parameters(inst, g);
    if (k == 0 || k > kMaxOracleParameters) continue;
    if (k == 4 && four_param >= 1) continue;
    const double step = k == 4 ? 0.05 : 0.02;
    const double oracle = entropy_oracle_grid(inst, g, step);
    const double solver = solve_entropy(inst, g).value;
    EXPECT_LE(solver, oracle + 1e-6);
    EXPECT_LE(oracle - solver, 0.01);
    ++checked;
    if (k == 4) ++four_param;
  }
  EXPECT_GE(checked, 20);
}

TEST(GridOracle, Fig5) {
  const auto inst = fixtures::fig5(1.05);
  const auto g = build_hypergraph(inst);
  EXPECT_EQ(free_channel_parameters(inst, g), 3u);
  EXPECT_NEAR(entropy_oracle_grid(inst, g, 0.05), kLog3 - 1.0, 1e-9);
  EXPECT_THROW(entropy_oracle_grid(inst, g, 0.2), std::invalid_argument);
}

TEST(BuildReconstruction, Fig5Centers) {
  const auto inst = fixtures::fig5(0.95);
  const auto g = build_hypergraph(inst);
  const auto r = build_reconstruction(inst, g);
  EXPECT_NEAR(r.at(0, 0)[0], 1.5, 1e-12);
  EXPECT_NEAR(r.at(0, 0)[1], 1.75, 1e-12);
  EXPECT_NEAR(r.at(1, 0)[0], 2.5, 1e-12);
  EXPECT_NEAR(r.at(1, 0)[1], 1.75, 1e-12);
}

TEST(BuildReconstruction, UndefinedWithoutSupport) {
  const auto inst = fixtures::example1();
  const auto r = build_reconstruction(inst, std::vector<VertexSet>{{0}, {1, 2}});
  EXPECT_FALSE(r.defined(0, 2));
  EXPECT_TRUE(r.defined(1, 2));
  EXPECT_THROW(r.at(0, 2), std::out_of_range);
  EXPECT_EQ(r.at(1, 1), (Point{0.0}));
}

// Any zero-distortion auxiliary maps to a hyperedge-valued W with no more
// conditional information.
TEST(RefineChannel, NeverIncreasesInformation) {
  const auto inst = fixtures::fig5(0.95);
  const std::vector<VertexSet> subsets{{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 1}, {1}};
  std::vector<std::vector<std::optional<Point>>> recon;
  for (const auto& s : subsets) {
    std::vector<Point> pts;
    for (auto x : s) pts.push_back(inst.f[x][0]);
    recon.push_back({min_enclosing_ball(pts).center});
  }
  const double optimum = functional_entropy(inst).value;
  std::mt19937_64 gen(505);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    Matrix rows(inst.nx, std::vector<double>(subsets.size(), 0.0));
    for (std::size_t x = 0; x < inst.nx; ++x) {
      double s = 0.0;
      for (std::size_t k = 0; k < subsets.size(); ++k)
        if (std::binary_search(subsets[k].begin(), subsets[k].end(), x) && u(gen) < 0.7) s += (rows[x][k] = u(gen));
      if (s == 0.0) {
        rows[x][x] = 1.0;
        s = 1.0;
      }
      for (auto& v : rows[x]) v /= s;
    }
    const auto refined = refine_channel(inst, rows, recon);
    for (const auto& e : refined.edges) EXPECT_TRUE(is_hyperedge(inst, e));
    const double before = conditional_mutual_information(inst, rows);
    const double after = conditional_mutual_information(inst, refined);
    EXPECT_LE(after, before + 1e-9);
    EXPECT_GE(after, optimum - 1e-6);
  }
}

TEST(RefineChannel, RejectsDistortingAuxiliary) {
  const auto inst = fixtures::fig5(0.95);
  Matrix rows{{1.0}, {1.0}, {1.0}};
  std::vector<std::vector<std::optional<Point>>> recon{{Point{1.0, 1.0}}};
  try {
    refine_channel(inst, rows, recon);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("x=1"), std::string::npos);
  }
}

TEST(SolutionJson, HasValueAndEdges) {
  const auto j = solution_to_json(functional_entropy(fixtures::fig5(0.95)));
  EXPECT_NEAR(j.at("value").get<double>(), 2.0 / 3.0, 1e-6);
  EXPECT_EQ(j.at("edges").size(), 2u);
}
