// Randomized quantization + polar lossy source coding for a binary
// auxiliary W.
//
// u = w G_N with G_N = F^{(x)n}, F = [[1,0],[1,1]], natural index order (no
// bit reversal), so G_N is its own inverse over GF(2).  The encoder walks
// the indices by successive cancellation: transmitted indices are sampled
// from P(u_i | u_1^{i-1}, x^N); frozen indices take the deterministic value
// argmax P(u_i | u_1^{i-1}) under the prior-only law, which the decoder can
// recompute from the same past.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "fcomp/core.hpp"
#include "fcomp/entropy.hpp"
#include "fcomp/lzw.hpp"
#include "fcomp/rng.hpp"
#include "json.hpp"

namespace fcomp {

inline constexpr double kLlrCap = 300.0;

/// Binary test channel (W, X) extracted from an entropy solution.
struct BinarySource {
  std::array<VertexSet, 2> edges;
  std::array<std::size_t, 2> edge_ids{0, 0};     // ids into the solution's edge list
  std::array<double, 2> prior{0.5, 0.5};         // p(w)
  std::array<std::vector<double>, 2> test_channel;  // p(x|w)

  std::size_t nx() const { return test_channel[0].size(); }

  double px(std::size_t x) const { return prior[0] * test_channel[0][x] + prior[1] * test_channel[1][x]; }

  /// p(w = 0 | x); 0.5 for symbols outside the support.
  double posterior0(std::size_t x) const {
    const double a = prior[0] * test_channel[0][x];
    const double b = prior[1] * test_channel[1][x];
    return a + b > 0.0 ? a / (a + b) : 0.5;
  }

  double mutual_information() const {
    double hwx = 0.0;
    for (std::size_t x = 0; x < nx(); ++x) hwx += px(x) * binary_entropy(posterior0(x));
    return std::max(0.0, binary_entropy(prior[0]) - hwx);
  }
};

inline BinarySource binary_source_from(const ProblemInstance& inst, const EntropySolution& sol) {
  const auto mass = sol.channel.edge_mass(inst);
  std::vector<std::size_t> used;
  for (std::size_t w = 0; w < mass.size(); ++w)
    if (mass[w] > 1e-9) used.push_back(w);
  if (used.size() > 2)
    throw PreconditionError("polar codec supports binary W only; the optimal channel uses " +
                            std::to_string(used.size()) + " hyperedges");
  if (used.size() == 1) {
    const std::size_t other = sol.channel.edges.size() > 1 ? (used[0] == 0 ? 1 : 0) : used[0];
    used.push_back(other);
  }
  const auto px = inst.marginal_x();
  BinarySource s;
  for (int b = 0; b < 2; ++b) {
    s.edge_ids[b] = used[b];
    s.edges[b] = sol.channel.edges[used[b]];
    s.test_channel[b].assign(inst.nx, 0.0);
  }
  std::array<double, 2> joint_total{0.0, 0.0};
  for (std::size_t x = 0; x < inst.nx; ++x) {
    if (px[x] <= 0.0) continue;
    std::array<double, 2> q{sol.channel.rows[x][used[0]], used[1] == used[0] ? 0.0 : sol.channel.rows[x][used[1]]};
    const double norm = q[0] + q[1];
    for (int b = 0; b < 2; ++b) {
      const double j = px[x] * q[b] / norm;
      s.test_channel[b][x] = j;
      joint_total[b] += j;
    }
  }
  for (int b = 0; b < 2; ++b) {
    s.prior[b] = joint_total[b];
    if (joint_total[b] > 0.0)
      for (auto& v : s.test_channel[b]) v /= joint_total[b];
    else
      s.test_channel[b] = s.test_channel[1 - b];
  }
  return s;
}

/// Z(W|X) = 2 sum_x p(x) sqrt(p(0|x) p(1|x)).
inline double bhattacharyya(const std::array<double, 2>& prior, const std::array<std::vector<double>, 2>& channel) {
  if (channel[0].size() != channel[1].size()) throw std::invalid_argument("bhattacharyya: ragged channel");
  double z = 0.0;
  for (std::size_t x = 0; x < channel[0].size(); ++x) {
    const double a = prior[0] * channel[0][x];
    const double b = prior[1] * channel[1][x];
    z += 2.0 * std::sqrt(a * b);  // p(x) sqrt(p(0|x) p(1|x)) = sqrt(p(0,x) p(1,x))
  }
  return std::min(z, 1.0);
}

inline void polar_transform(std::span<std::uint8_t> v) {
  const std::size_t n = v.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("polar_transform: length must be a power of 2");
  for (std::size_t h = n / 2; h >= 1; h /= 2)
    for (std::size_t base = 0; base < n; base += 2 * h)
      for (std::size_t j = base; j < base + h; ++j) v[j] ^= v[j + h];
}

inline double clamp_llr(double l) { return std::clamp(l, -kLlrCap, kLlrCap); }

/// Exact check-node combination of two LLRs.
inline double boxplus(double a, double b) {
  const double aa = std::abs(a), ab = std::abs(b);
  const double m = std::min(aa, ab);
  if (m == 0.0) return 0.0;
  auto corr = [](double t) { return t > 40.0 ? 0.0 : std::log1p(std::exp(-t)); };
  const double v = m + corr(aa + ab) - corr(std::abs(aa - ab));
  return ((a < 0.0) != (b < 0.0)) ? -v : v;
}

inline double llr_bhattacharyya(double l) { return 1.0 / std::cosh(l / 2.0); }

inline double llr_binary_entropy(double l) { return binary_entropy(1.0 / (1.0 + std::exp(std::abs(l)))); }

/// Successive-cancellation recursion over two LLR streams (with and without
/// the source observation) sharing one decision sequence.
class SuccessiveCancellation {
 public:
  explicit SuccessiveCancellation(unsigned n_log) : n_log_(n_log) {
    for (unsigned d = 0; d < n_log; ++d) {
      const std::size_t half = (std::size_t{1} << (n_log - d)) / 2;
      cond_.emplace_back(half);
      prior_.emplace_back(half);
    }
  }

  std::size_t length() const { return std::size_t{1} << n_log_; }

  /// decide(i, llr_cond, llr_prior) -> bit.  Fills u and w = u G_N.
  template <class Decide>
  void run(std::span<const double> llr_cond, std::span<const double> llr_prior, Decide&& decide,
           std::span<std::uint8_t> u, std::span<std::uint8_t> w) {
    if (llr_cond.size() != length() || llr_prior.size() != length() || u.size() != length() || w.size() != length())
      throw std::invalid_argument("SuccessiveCancellation: length mismatch");
    recurse(0, length(), llr_cond.data(), llr_prior.data(), 0, decide, u.data(), w.data());
  }

 private:
  template <class Decide>
  void recurse(unsigned depth, std::size_t n, const double* lc, const double* lp, std::size_t offset, Decide& decide,
               std::uint8_t* u, std::uint8_t* w) {
    if (n == 1) {
      const std::uint8_t bit = static_cast<std::uint8_t>(decide(offset, lc[0], lp[0]) ? 1 : 0);
      u[offset] = bit;
      w[0] = bit;
      return;
    }
    const std::size_t h = n / 2;
    double* bc = cond_[depth].data();
    double* bp = prior_[depth].data();
    // First half of u sees t = w_left xor w_right.
    for (std::size_t j = 0; j < h; ++j) {
      bc[j] = boxplus(lc[j], lc[j + h]);
      bp[j] = boxplus(lp[j], lp[j + h]);
    }
    recurse(depth + 1, h, bc, bp, offset, decide, u, w);
    // Second half sees w_right directly and through w_left = t xor w_right.
    for (std::size_t j = 0; j < h; ++j) {
      bc[j] = lc[j + h] + (w[j] ? -lc[j] : lc[j]);
      bp[j] = lp[j + h] + (w[j] ? -lp[j] : lp[j]);
    }
    recurse(depth + 1, h, bc, bp, offset + h, decide, u, w + h);
    for (std::size_t j = 0; j < h; ++j) w[j] ^= w[j + h];
  }

  unsigned n_log_;
  std::vector<std::vector<double>> cond_, prior_;
};

struct PolarizationEstimate {
  std::vector<double> z_cond, z_prior;  // Z(U_i | U^{i-1}, X^N), Z(U_i | U^{i-1})
  std::vector<double> h_cond, h_prior;  // matching conditional entropies (bits)
};

inline std::vector<double> source_llrs(const BinarySource& src, std::span<const std::size_t> xs) {
  std::vector<double> l(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double p0 = src.posterior0(xs[i]);
    l[i] = clamp_llr(std::log(p0) - std::log1p(-p0));
  }
  return l;
}

inline double prior_llr(const BinarySource& src) {
  return clamp_llr(std::log(src.prior[0]) - std::log(src.prior[1]));
}

/// Genie-aided Monte-Carlo estimate: (w^N, x^N) drawn i.i.d. from the test
/// channel, u = w G_N, SC evaluated along the true u.
inline PolarizationEstimate estimate_polarization(const BinarySource& src, unsigned n_log, std::size_t samples,
                                                  std::uint64_t seed) {
  if (n_log > 24) throw std::invalid_argument("estimate_polarization: block length too large");
  if (samples == 0) throw std::invalid_argument("estimate_polarization: need at least one sample");
  const std::size_t n = std::size_t{1} << n_log;
  PolarizationEstimate est;
  est.z_cond.assign(n, 0.0);
  est.z_prior.assign(n, 0.0);
  est.h_cond.assign(n, 0.0);
  est.h_prior.assign(n, 0.0);

  std::vector<double> px(src.nx());
  for (std::size_t x = 0; x < px.size(); ++x) px[x] = src.px(x);
  const CategoricalSampler draw_x(px);

  SuccessiveCancellation sc(n_log);
  std::vector<std::size_t> xs(n);
  std::vector<std::uint8_t> w(n), u(n), u_out(n), w_out(n);
  const std::vector<double> lp(n, prior_llr(src));
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(mix_seed(seed, s));
    for (std::size_t j = 0; j < n; ++j) {
      xs[j] = draw_x(rng);
      w[j] = rng.bernoulli(1.0 - src.posterior0(xs[j])) ? 1 : 0;
    }
    u = w;
    polar_transform(u);
    const auto lc = source_llrs(src, xs);
    sc.run(lc, lp,
           [&](std::size_t i, double l_cond, double l_prior) {
             est.z_cond[i] += llr_bhattacharyya(l_cond);
             est.z_prior[i] += llr_bhattacharyya(l_prior);
             est.h_cond[i] += llr_binary_entropy(l_cond);
             est.h_prior[i] += llr_binary_entropy(l_prior);
             return u[i];
           },
           u_out, w_out);
  }
  const double inv = 1.0 / static_cast<double>(samples);
  for (std::size_t i = 0; i < n; ++i) {
    est.z_cond[i] = std::clamp(est.z_cond[i] * inv, 0.0, 1.0);
    est.z_prior[i] = std::clamp(est.z_prior[i] * inv, 0.0, 1.0);
    est.h_cond[i] *= inv;
    est.h_prior[i] *= inv;
  }
  return est;
}

struct PolarDesign {
  unsigned n_log = 0;
  std::array<double, 2> prior{0.5, 0.5};
  std::array<std::vector<double>, 2> test_channel;
  std::vector<double> z_cond, z_prior;
  std::vector<std::size_t> info_set;  // ascending
  double mutual_information = 0.0;

  std::size_t block_length() const { return std::size_t{1} << n_log; }
  double rate() const { return static_cast<double>(info_set.size()) / static_cast<double>(block_length()); }

  std::vector<std::uint8_t> info_mask() const {
    std::vector<std::uint8_t> m(block_length(), 0);
    for (auto i : info_set) m[i] = 1;
    return m;
  }

  BinarySource source() const {
    BinarySource s;
    s.prior = prior;
    s.test_channel = test_channel;
    return s;
  }
};

inline PolarDesign design_polar(const BinarySource& src, unsigned n_log, std::size_t samples, std::uint64_t seed) {
  PolarDesign d;
  d.n_log = n_log;
  d.prior = src.prior;
  d.test_channel = src.test_channel;
  d.mutual_information = src.mutual_information();
  auto est = estimate_polarization(src, n_log, samples, seed);
  d.z_cond = std::move(est.z_cond);
  d.z_prior = std::move(est.z_prior);
  return d;
}

/// Transmits the ceil(N * target_rate) indices whose value is most
/// determined by the source yet least predictable from the past alone,
/// ranked by z_prior - z_cond (ties to the lower index).
inline PolarDesign select_sets(PolarDesign d, double target_rate) {
  if (!(target_rate <= 1.0)) throw std::invalid_argument("select_sets: target rate above 1");
  if (!(target_rate > d.mutual_information))
    throw PreconditionError("select_sets: infeasible rate " + std::to_string(target_rate) +
                            " <= I(W;X) = " + std::to_string(d.mutual_information));
  const std::size_t n = d.block_length();
  if (d.z_cond.size() != n || d.z_prior.size() != n) throw std::invalid_argument("select_sets: z arrays have wrong length");
  const auto k = std::min(n, static_cast<std::size_t>(std::ceil(static_cast<double>(n) * target_rate - 1e-9)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return d.z_prior[a] - d.z_cond[a] > d.z_prior[b] - d.z_cond[b];
  });
  d.info_set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(d.info_set.begin(), d.info_set.end());
  return d;
}

struct PolarCodeword {
  std::vector<std::uint8_t> info_bits;  // u restricted to the information set
  std::vector<std::uint8_t> u;          // encoder-side full u
  std::vector<std::uint8_t> w;          // encoder-side w = u G_N
};

inline std::uint8_t frozen_bit(double llr_prior) { return llr_prior >= 0.0 ? 0 : 1; }

inline PolarCodeword polar_encode(const PolarDesign& d, std::span<const std::size_t> xs, std::uint64_t seed) {
  const std::size_t n = d.block_length();
  if (xs.size() != n) throw std::invalid_argument("polar_encode: source block has wrong length");
  const BinarySource src = d.source();
  for (std::size_t x : xs)
    if (x >= src.nx()) throw std::out_of_range("polar_encode: symbol out of range");
  const auto mask = d.info_mask();
  const auto lc = source_llrs(src, xs);
  const std::vector<double> lp(n, prior_llr(src));
  Rng rng(seed);
  PolarCodeword cw;
  cw.u.assign(n, 0);
  cw.w.assign(n, 0);
  SuccessiveCancellation sc(d.n_log);
  sc.run(lc, lp,
         [&](std::size_t i, double l_cond, double l_prior) -> std::uint8_t {
           if (!mask[i]) return frozen_bit(l_prior);
           const double p1 = 1.0 / (1.0 + std::exp(l_cond));
           return rng.bernoulli(p1) ? 1 : 0;
         },
         cw.u, cw.w);
  for (auto i : d.info_set) cw.info_bits.push_back(cw.u[i]);
  return cw;
}

/// Recovers w_hat = u G_N from the transmitted bits.
inline std::vector<std::uint8_t> polar_decode(const PolarDesign& d, std::span<const std::uint8_t> info_bits) {
  if (info_bits.size() != d.info_set.size()) throw std::invalid_argument("polar_decode: wrong number of bits");
  const std::size_t n = d.block_length();
  const auto mask = d.info_mask();
  const std::vector<double> lp(n, prior_llr(d.source()));
  std::size_t next = 0;
  std::vector<std::uint8_t> u(n), w(n);
  SuccessiveCancellation sc(d.n_log);
  sc.run(lp, lp,
         [&](std::size_t i, double, double l_prior) -> std::uint8_t {
           return mask[i] ? info_bits[next++] : frozen_bit(l_prior);
         },
         u, w);
  return w;
}

struct PolarRunReport {
  double rate = 0.0;
  double distortion = 0.0;
  std::size_t blocks = 0;
};

/// Design + reconstruction for one instance and its optimal binary channel.
class PolarCodec {
 public:
  PolarCodec(const ProblemInstance& inst, const EntropySolution& sol, PolarDesign design)
      : inst_(inst), source_(binary_source_from(inst, sol)), design_(std::move(design)), recon_(sol.recon) {}

  PolarCodec(const ProblemInstance& inst, const EntropySolution& sol, unsigned n_log, double target_rate,
             std::size_t samples, std::uint64_t seed)
      : inst_(inst), source_(binary_source_from(inst, sol)), recon_(sol.recon) {
    if (inst.ny > 1 && !is_independent(inst))
      throw PreconditionError("polar codec requires X independent of Y");
    design_ = select_sets(design_polar(source_, n_log, samples, seed), target_rate);
  }

  const PolarDesign& design() const { return design_; }
  const BinarySource& source() const { return source_; }

  PolarCodeword encode(std::span<const std::size_t> xs, std::uint64_t seed) const {
    return polar_encode(design_, xs, seed);
  }

  std::vector<std::uint8_t> decode(std::span<const std::uint8_t> info_bits) const {
    return polar_decode(design_, info_bits);
  }

  /// Violation count of d(x_i, w_i) = d_eps(x_i, y_i, g(w_i, y_i)).
  std::size_t distortion_count(std::span<const std::size_t> xs, std::span<const std::size_t> ys,
                               std::span<const std::uint8_t> w) const {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const std::size_t edge = source_.edge_ids[w[i]];
      if (!recon_.defined(edge, ys[i]) || distortion_eps(inst_, xs[i], ys[i], recon_.at(edge, ys[i]))) ++bad;
    }
    return bad;
  }

  std::vector<Point> reconstruct(std::span<const std::uint8_t> w, std::span<const std::size_t> ys) const {
    std::vector<Point> z;
    z.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::size_t edge = source_.edge_ids[w[i]];
      z.push_back(recon_.defined(edge, ys[i]) ? recon_.at(edge, ys[i]) : Point(inst_.dim, 0.0));
    }
    return z;
  }

 private:
  ProblemInstance inst_;
  BinarySource source_;
  PolarDesign design_;
  ReconstructionMap recon_;
};

inline EncodedBlock pack_bits(std::span<const std::uint8_t> bits, std::uint64_t source_length) {
  BitWriter out;
  for (auto b : bits) out.put_bit(b);
  EncodedBlock block;
  block.bit_count = out.bit_count();
  block.bytes = out.take();
  block.n = source_length;
  block.alphabet_size = 2;
  return block;
}

inline nlohmann::json design_to_json(const PolarDesign& d) {
  return nlohmann::json{{"n_log", d.n_log},
                        {"prior", d.prior},
                        {"test_channel", d.test_channel},
                        {"info_set", d.info_set},
                        {"z_cond", d.z_cond},
                        {"z_prior", d.z_prior},
                        {"mutual_information", d.mutual_information},
                        {"frozen_rule", "prior-argmax"}};
}

inline PolarDesign design_from_json(const nlohmann::json& j) {
  PolarDesign d;
  d.n_log = j.at("n_log").get<unsigned>();
  d.prior = j.at("prior").get<std::array<double, 2>>();
  d.test_channel = j.at("test_channel").get<std::array<std::vector<double>, 2>>();
  d.info_set = j.at("info_set").get<std::vector<std::size_t>>();
  d.z_cond = j.at("z_cond").get<std::vector<double>>();
  d.z_prior = j.at("z_prior").get<std::vector<double>>();
  d.mutual_information = j.value("mutual_information", d.source().mutual_information());
  return d;
}

}  // namespace fcomp
