// Canonical worked instances.  Vertex and side-information indices are
// 0-based here; reports print them 1-based.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcomp/core.hpp"

namespace fcomp::fixtures {

/// 3x3 source with two zero cells and a scalar {0,1}-valued function; eps = 0.
inline ProblemInstance example1() {
  ProblemInstance inst;
  inst.nx = 3;
  inst.ny = 3;
  inst.dim = 1;
  const double s = 1.0 / 7.0;
  inst.p = {{s, s, 0.0}, {s, s, s}, {s, s, 0.0}};
  inst.f = {{{1}, {1}, {1}}, {{1}, {0}, {1}}, {{1}, {0}, {1}}};
  inst.epsilon = 0.0;
  return inst;
}

/// Independent uniform X in {1,2,3}, Y in {1,2}; f(1,y) = (1,y),
/// f(2,y) = (2, 1.5 + y), f(3,y) = (3,y); eps = sqrt(13)/4.
inline ProblemInstance example2() {
  ProblemInstance inst;
  inst.nx = 3;
  inst.ny = 2;
  inst.dim = 2;
  inst.p.assign(3, std::vector<double>(2, 1.0 / 6.0));
  inst.f.assign(3, std::vector<Point>(2));
  for (std::size_t y = 0; y < 2; ++y) {
    const double yv = static_cast<double>(y + 1);
    inst.f[0][y] = {1.0, yv};
    inst.f[1][y] = {2.0, 1.5 + yv};
    inst.f[2][y] = {3.0, yv};
  }
  inst.epsilon = std::sqrt(13.0) / 4.0;
  return inst;
}

/// Source pmfs of the LZW table rows.  Row 3 sums to 7/6 as printed and is
/// kept only for reference.
inline std::array<std::vector<double>, 4> fig4_pmfs() {
  return {{{1.0 / 15, 4.0 / 15, 8.0 / 15, 2.0 / 15},
           {2.0 / 17, 1.0 / 17, 8.0 / 17, 6.0 / 17},
           {1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 6},
           {1.0 / 6, 1.0 / 6, 5.0 / 12, 1.0 / 4}}};
}

/// Scalar function table over X in {1..4}, Y in {1,2} (rows 1,2 and rows
/// 3,4 coincide), with X independent of a uniform Y; eps = 0.
inline ProblemInstance fig4(const std::vector<double>& px) {
  if (px.size() != 4) throw std::invalid_argument("fig4: need 4 source probabilities");
  ProblemInstance inst;
  inst.nx = 4;
  inst.ny = 2;
  inst.dim = 1;
  inst.f = {{{2}, {2}}, {{2}, {2}}, {{1}, {2}}, {{1}, {2}}};
  inst.p.assign(4, std::vector<double>(2));
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 2; ++y) inst.p[x][y] = px[x] * 0.5;
  inst.epsilon = 0.0;
  return inst;
}

inline ProblemInstance fig4_row(std::size_t row) { return fig4(fig4_pmfs().at(row)); }

/// Uniform X in {1,2,3} without side information, f(1) = (1,1),
/// f(2) = (2,2.5), f(3) = (3,1).
inline ProblemInstance fig5(double epsilon = 0.95) {
  ProblemInstance inst;
  inst.nx = 3;
  inst.ny = 1;
  inst.dim = 2;
  inst.p = {{1.0 / 3}, {1.0 / 3}, {1.0 / 3}};
  inst.f = {{{1.0, 1.0}}, {{2.0, 2.5}}, {{3.0, 1.0}}};
  inst.epsilon = epsilon;
  return inst;
}

}  // namespace fcomp::fixtures
