// Problem-instance model shared by every fcomp module: finite alphabets,
// joint pmf, vector-valued function table and the maximal-distortion
// fidelity.  Everything here is a pure function of its arguments.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcomp {

using Point = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

inline constexpr double kNormTol = 1e-12;   // pmf normalization
inline constexpr double kGeomTol = 1e-9;    // radius / distance comparisons
inline constexpr double kRowTol = 1e-9;     // channel row normalization

/// Malformed instance or violated data invariant (CLI exit code 2).
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A codec or algorithm precondition does not hold (CLI exit code 3).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Distribution {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t i) const { return probs[i]; }

  void validate() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (!(probs[i] >= 0.0))
        throw InstanceError("probs[" + std::to_string(i) + "] is negative");
      sum += probs[i];
    }
    if (std::abs(sum - 1.0) > kNormTol)
      throw InstanceError("probs sum to " + std::to_string(sum) + ", expected 1");
  }
};

struct ProblemInstance {
  std::size_t nx = 0;
  std::size_t ny = 1;  // ny == 1 means no side information
  std::size_t dim = 1;
  Matrix p;                              // p[x][y]
  std::vector<std::vector<Point>> f;     // f[x][y], dim coordinates each
  double epsilon = 0.0;

  double pxy(std::size_t x, std::size_t y) const { return p[x][y]; }
  const Point& value(std::size_t x, std::size_t y) const { return f[x][y]; }

  ProblemInstance with_epsilon(double eps) const {
    ProblemInstance copy = *this;
    copy.epsilon = eps;
    return copy;
  }

  std::vector<double> marginal_x() const {
    std::vector<double> m(nx, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) m[x] += p[x][y];
    return m;
  }

  std::vector<double> marginal_y() const {
    std::vector<double> m(ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) m[y] += p[x][y];
    return m;
  }

  /// Checks every data invariant; the message names the offending field.
  void validate() const {
    if (nx == 0) throw InstanceError("nx must be at least 1");
    if (ny == 0) throw InstanceError("ny must be at least 1");
    if (dim == 0) throw InstanceError("dim must be at least 1");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
      throw InstanceError("epsilon must be a finite nonnegative number");
    if (p.size() != nx) throw InstanceError("p has " + std::to_string(p.size()) + " rows, expected nx");
    if (f.size() != nx) throw InstanceError("f has " + std::to_string(f.size()) + " rows, expected nx");
    double sum = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      if (p[x].size() != ny)
        throw InstanceError("p[" + std::to_string(x) + "] is ragged: expected ny entries");
      if (f[x].size() != ny)
        throw InstanceError("f[" + std::to_string(x) + "] is ragged: expected ny entries");
      for (std::size_t y = 0; y < ny; ++y) {
        const std::string at = "[" + std::to_string(x) + "][" + std::to_string(y) + "]";
        if (!(p[x][y] >= 0.0) || !std::isfinite(p[x][y]))
          throw InstanceError("p" + at + " is negative or not finite");
        sum += p[x][y];
        if (f[x][y].size() != dim)
          throw InstanceError("f" + at + " has " + std::to_string(f[x][y].size()) +
                              " coordinates, expected dim");
        for (double c : f[x][y])
          if (!std::isfinite(c)) throw InstanceError("f" + at + " is not finite");
      }
    }
    if (std::abs(sum - 1.0) > kNormTol)
      throw InstanceError("p is not normalized: sums to " + std::to_string(sum));
  }
};

inline double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("point dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Maximal-distortion indicator: 1 iff the reconstruction is farther than
/// epsilon from f(x, y).  Boundary ties (within kGeomTol) count as inside.
inline int distortion_eps(const ProblemInstance& inst, std::size_t x, std::size_t y,
                          std::span<const double> z) {
  if (x >= inst.nx || y >= inst.ny) throw std::out_of_range("symbol index out of range");
  if (z.size() != inst.dim) throw std::invalid_argument("reconstruction has wrong dimension");
  return distance(z, inst.f[x][y]) > inst.epsilon + kGeomTol ? 1 : 0;
}

struct ErrorReport {
  std::size_t n = 0;
  std::size_t violations = 0;
  double p_avg = 0.0;
};

inline ErrorReport p_avg(const ProblemInstance& inst, std::span<const std::size_t> xs,
                         std::span<const std::size_t> ys, std::span<const Point> zs) {
  if (xs.size() != ys.size() || xs.size() != zs.size())
    throw std::invalid_argument("p_avg: sequence lengths differ");
  if (xs.empty()) throw std::invalid_argument("p_avg: empty sequence");
  ErrorReport r;
  r.n = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) r.violations += distortion_eps(inst, xs[i], ys[i], zs[i]);
  r.p_avg = static_cast<double>(r.violations) / static_cast<double>(r.n);
  return r;
}

inline double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

inline double entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double q : probs) h -= plogp(q);
  return h;
}

inline double binary_entropy(double q) { return -plogp(q) - plogp(1.0 - q); }

/// Throws unless every row with positive p(x) is a distribution.
inline void validate_channel_rows(const ProblemInstance& inst, const Matrix& rows) {
  if (rows.size() != inst.nx) throw std::invalid_argument("channel has wrong number of rows");
  const auto px = inst.marginal_x();
  for (std::size_t x = 0; x < inst.nx; ++x) {
    if (px[x] <= 0.0) continue;
    double s = 0.0;
    for (double v : rows[x]) {
      if (v < 0.0) throw std::invalid_argument("channel row " + std::to_string(x) + " has a negative entry");
      s += v;
    }
    if (std::abs(s - 1.0) > kRowTol)
      throw std::invalid_argument("channel row " + std::to_string(x) + " is not normalized");
  }
}

/// I(W;X|Y) in bits for the channel p(w|x) given as rows[x][w], with W-X-Y.
inline double conditional_mutual_information(const ProblemInstance& inst, const Matrix& rows) {
  validate_channel_rows(inst, rows);
  std::size_t m = 0;
  for (const auto& r : rows) m = std::max(m, r.size());
  const auto py = inst.marginal_y();
  double total = 0.0;
  std::vector<double> r_wy(m);
  for (std::size_t y = 0; y < inst.ny; ++y) {
    if (py[y] <= 0.0) continue;
    std::fill(r_wy.begin(), r_wy.end(), 0.0);
    for (std::size_t x = 0; x < inst.nx; ++x) {
      const double pxgy = inst.p[x][y] / py[y];
      if (pxgy <= 0.0) continue;
      for (std::size_t w = 0; w < rows[x].size(); ++w) r_wy[w] += pxgy * rows[x][w];
    }
    for (std::size_t x = 0; x < inst.nx; ++x) {
      if (inst.p[x][y] <= 0.0) continue;
      for (std::size_t w = 0; w < rows[x].size(); ++w) {
        const double q = rows[x][w];
        if (q > 0.0) total += inst.p[x][y] * q * std::log2(q / r_wy[w]);
      }
    }
  }
  return std::max(total, 0.0);
}

/// True when p(x, y) = p(x) p(y) everywhere within the normalization tolerance.
inline bool is_independent(const ProblemInstance& inst) {
  const auto px = inst.marginal_x();
  const auto py = inst.marginal_y();
  for (std::size_t x = 0; x < inst.nx; ++x)
    for (std::size_t y = 0; y < inst.ny; ++y)
      if (std::abs(inst.p[x][y] - px[x] * py[y]) > kNormTol) return false;
  return true;
}

}  // namespace fcomp
