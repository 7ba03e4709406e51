// R(epsilon) as an exact step function, plus achievable upper bounds for
// Lipschitz and delta-approximated functions.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fcomp/core.hpp"
#include "fcomp/entropy.hpp"
#include "fcomp/geometry.hpp"
#include "fcomp/hypergraph.hpp"

namespace fcomp {

/// Every enclosing-ball radius that a (subset, y) pair can produce, sorted
/// and deduplicated.  The hypergraph is constant between consecutive values.
inline std::vector<double> critical_epsilons(const ProblemInstance& inst) {
  detail::check_size_guard(inst);
  const std::size_t n = inst.nx;
  std::vector<double> radii;
  for (std::size_t y = 0; y < inst.ny; ++y) {
    std::uint32_t support = 0;
    for (std::size_t x = 0; x < n; ++x)
      if (inst.p[x][y] > 0.0) support |= (1u << x);
    std::set<std::uint32_t> seen;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      const std::uint32_t sy = s & support;
      if (sy == 0 || !seen.insert(sy).second) continue;
      VertexSet members;
      for (std::size_t x = 0; x < n; ++x)
        if (sy & (1u << x)) members.push_back(x);
      radii.push_back(subset_radius(inst, members, y));
    }
  }
  std::sort(radii.begin(), radii.end());
  std::vector<double> out;
  for (double r : radii)
    if (out.empty() || r - out.back() > kGeomTol) out.push_back(r);
  return out;
}

struct RateCurve {
  std::vector<double> breakpoints;  // strictly increasing; G changes at each
  std::vector<double> rates;        // rates[i] holds on [b_{i-1}, b_i), b_{-1} = 0
  std::vector<Hypergraph> graphs;   // hypergraph on each interval

  /// Right-continuous evaluation: a breakpoint takes the value to its right.
  double rate_at(double eps) const {
    const auto k = std::upper_bound(breakpoints.begin(), breakpoints.end(), eps + kGeomTol) - breakpoints.begin();
    return rates[static_cast<std::size_t>(k)];
  }

  /// CSV rows "eps_lo,eps_hi,rate"; the last interval is open ("inf").
  std::string to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "eps_lo,eps_hi,rate\n";
    for (std::size_t i = 0; i < rates.size(); ++i) {
      os << (i == 0 ? 0.0 : breakpoints[i - 1]) << ',';
      if (i < breakpoints.size())
        os << breakpoints[i];
      else
        os << "inf";
      os << ',' << rates[i] << '\n';
    }
    return os.str();
  }
};

inline RateCurve rate_curve(const ProblemInstance& inst, const SolverOptions& opt = {}) {
  const auto candidates = critical_epsilons(inst);
  RateCurve curve;
  for (double c : candidates) {
    Hypergraph g = build_hypergraph(inst.with_epsilon(c));
    if (!curve.graphs.empty() && curve.graphs.back() == g) continue;
    if (!curve.graphs.empty()) curve.breakpoints.push_back(c);
    curve.rates.push_back(solve_entropy(inst.with_epsilon(c), g.maximal_edges, opt).value);
    curve.graphs.push_back(std::move(g));
  }
  return curve;
}

inline nlohmann::json rate_curve_to_json(const RateCurve& c) {
  nlohmann::json intervals = nlohmann::json::array();
  for (std::size_t i = 0; i < c.rates.size(); ++i) {
    nlohmann::json row{{"eps_lo", i == 0 ? 0.0 : c.breakpoints[i - 1]}, {"rate", c.rates[i]},
                       {"maximal_edges", c.graphs[i].maximal_edges}};
    row["eps_hi"] = i < c.breakpoints.size() ? nlohmann::json(c.breakpoints[i]) : nlohmann::json("inf");
    intervals.push_back(std::move(row));
  }
  return nlohmann::json{{"breakpoints", c.breakpoints}, {"intervals", intervals}};
}

/// Upper bound on R(epsilon) valid for every L-Lipschitz f: the entropy of
/// the identity function on the embedded alphabet at fidelity epsilon / L.
inline double lipschitz_bound(const Distribution& px, const std::vector<Point>& positions, double lipschitz,
                              double epsilon) {
  if (!(lipschitz > 0.0)) throw std::invalid_argument("lipschitz_bound: L must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("lipschitz_bound: epsilon must be positive");
  px.validate();
  if (positions.size() != px.size()) throw InstanceError("lipschitz_bound: one position per symbol required");
  ProblemInstance id;
  id.nx = px.size();
  id.ny = 1;
  id.dim = positions.empty() ? 1 : positions[0].size();
  id.epsilon = epsilon / lipschitz;
  for (std::size_t x = 0; x < id.nx; ++x) {
    id.p.push_back({px[x]});
    id.f.push_back({positions[x]});
  }
  id.validate();
  return functional_entropy(id).value;
}

/// Achievable bound when the encoder only knows a delta-approximation g of
/// f: the entropy of g's hypergraph at fidelity epsilon - 2 delta.
inline double approx_function_bound(const ProblemInstance& inst_g, double delta, double epsilon) {
  if (!(delta >= 0.0)) throw std::invalid_argument("approx_function_bound: delta must be nonnegative");
  if (!(epsilon > 2.0 * delta))
    throw PreconditionError("approx_function_bound: requires epsilon > 2 * delta");
  return functional_entropy(inst_g.with_epsilon(epsilon - 2.0 * delta)).value;
}

}  // namespace fcomp
