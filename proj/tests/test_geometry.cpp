#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fcomp/geometry.hpp"

using namespace fcomp;

namespace {

std::vector<Point> random_points(std::mt19937_64& gen, std::size_t n, std::size_t d, double scale = 10.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Point> pts(n, Point(d));
  for (auto& p : pts)
    for (auto& c : p) c = u(gen);
  return pts;
}

void expect_encloses(const Ball& b, const std::vector<Point>& pts) {
  for (const auto& p : pts) EXPECT_LE(distance(b.center, p), b.radius + 1e-9);
}

}  // namespace

TEST(MinEnclosingBall, SinglePoint) {
  const Ball b = min_enclosing_ball(std::vector<Point>{{0.0, 0.0}});
  EXPECT_EQ(b.radius, 0.0);
  EXPECT_EQ(b.center, (Point{0.0, 0.0}));
}

TEST(MinEnclosingBall, Example2Pair) {
  const Ball b = min_enclosing_ball(std::vector<Point>{{1, 1}, {2, 2.5}});
  EXPECT_NEAR(b.center[0], 1.5, 1e-12);
  EXPECT_NEAR(b.center[1], 1.75, 1e-12);
  EXPECT_NEAR(b.radius, std::sqrt(13.0) / 4.0, 1e-12);
}

TEST(MinEnclosingBall, Fig5Triple) {
  const std::vector<Point> pts{{1, 1}, {2, 2.5}, {3, 1}};
  const Ball b = min_enclosing_ball(pts);
  EXPECT_NEAR(b.radius, 13.0 / 12.0, 1e-12);
  EXPECT_NEAR(b.center[0], 2.0, 1e-12);
  EXPECT_NEAR(b.center[1], 17.0 / 12.0, 1e-12);
  const Ball o = ball_oracle_bruteforce(pts);
  EXPECT_NEAR(o.radius, 13.0 / 12.0, 1e-12);
  EXPECT_NEAR(o.center[1], 17.0 / 12.0, 1e-12);
}

TEST(MinEnclosingBall, HorizontalPair) {
  const Ball b = min_enclosing_ball(std::vector<Point>{{1, 1}, {3, 1}});
  EXPECT_NEAR(b.radius, 1.0, 1e-12);
  EXPECT_NEAR(b.center[0], 2.0, 1e-12);
  EXPECT_NEAR(b.center[1], 1.0, 1e-12);
}

TEST(MinEnclosingBall, Errors) {
  EXPECT_THROW(min_enclosing_ball(std::vector<Point>{}), std::invalid_argument);
  EXPECT_THROW(min_enclosing_ball(std::vector<Point>{{1, 2}, {1}}), std::invalid_argument);
  EXPECT_THROW(ball_oracle_bruteforce(std::vector<Point>{{1, 2, 3}}), std::invalid_argument);
}

TEST(MinEnclosingBall, CollinearAndDuplicatePoints) {
  const Ball line = min_enclosing_ball(std::vector<Point>{{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  EXPECT_NEAR(line.radius, std::sqrt(18.0) / 2.0, 1e-12);
  const Ball dup = min_enclosing_ball(std::vector<Point>{{2, 5}, {2, 5}, {2, 5}});
  EXPECT_NEAR(dup.radius, 0.0, 1e-15);
  const Ball line3 = min_enclosing_ball(std::vector<Point>{{0, 0, 0}, {1, 0, 0}, {4, 0, 0}});
  EXPECT_NEAR(line3.radius, 2.0, 1e-12);
}

TEST(MinEnclosingBall, OneDimensionIsHalfRange) {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 200; ++t) {
    const auto pts = random_points(gen, 1 + t % 9, 1);
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    EXPECT_EQ(min_enclosing_ball(pts).radius, (hi - lo) / 2.0);
  }
}

TEST(MinEnclosingBall, DeterministicForFixedInput) {
  std::mt19937_64 gen(8);
  const auto pts = random_points(gen, 30, 3);
  const Ball a = min_enclosing_ball(pts), b = min_enclosing_ball(pts);
  EXPECT_EQ(a.radius, b.radius);
  EXPECT_EQ(a.center, b.center);
}

TEST(MinEnclosingBall, OracleEquivalencePlanar) {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 300; ++t) {
    const auto pts = random_points(gen, 1 + t % 12, 2);
    EXPECT_NEAR(min_enclosing_ball(pts).radius, ball_oracle_bruteforce(pts).radius, 1e-9);
  }
}

TEST(MinEnclosingBall, EnclosesAndIsMinimalInHigherDimensions) {
  std::mt19937_64 gen(34);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t d = 2; d <= 8; ++d)
    for (int t = 0; t < 20; ++t) {
      const auto pts = random_points(gen, 2 + static_cast<std::size_t>(t) % 15, d);
      const Ball b = min_enclosing_ball(pts);
      expect_encloses(b, pts);
      // Shrinking by 1e-6 around any nearby center must leave some point out.
      for (int probe = 0; probe < 20; ++probe) {
        Point c = b.center;
        for (auto& v : c) v += 1e-3 * u(gen);
        double far = 0.0;
        for (const auto& p : pts) far = std::max(far, distance(c, p));
        EXPECT_GT(far, b.radius - 1e-6);
      }
    }
}

TEST(MinEnclosingBall, SubsetMonotonicity) {
  std::mt19937_64 gen(55);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t) % 4;
    auto pts = random_points(gen, 12, d);
    const double full = min_enclosing_ball(pts).radius;
    std::shuffle(pts.begin(), pts.end(), gen);
    pts.resize(1 + static_cast<std::size_t>(t) % 11);
    EXPECT_LE(min_enclosing_ball(pts).radius, full + 1e-12);
  }
}

TEST(MinEnclosingBall, TranslationEquivariance) {
  std::mt19937_64 gen(89);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t) % 3;
    const auto pts = random_points(gen, 10, d);
    Point shift(d);
    for (auto& s : shift) s = u(gen);
    auto moved = pts;
    for (auto& p : moved)
      for (std::size_t c = 0; c < d; ++c) p[c] += shift[c];
    const Ball a = min_enclosing_ball(pts), b = min_enclosing_ball(moved);
    EXPECT_NEAR(a.radius, b.radius, 1e-9);
    for (std::size_t c = 0; c < d; ++c) EXPECT_NEAR(a.center[c] + shift[c], b.center[c], 1e-9);
  }
}
