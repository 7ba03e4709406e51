#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace fcomp {

/// Seeded 64-bit Mersenne Twister (std::mt19937_64).  Uniform doubles use
/// the top 53 bits so results do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p_one) { return uniform() < p_one; }

 private:
  std::mt19937_64 gen_;
};

/// SplitMix64 finalizer; derives independent stream seeds from one seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Inverse-CDF sampler over a finite pmf.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(std::span<const double> probs) {
    if (probs.empty()) throw std::invalid_argument("empty distribution");
    cdf_.reserve(probs.size());
    double acc = 0.0;
    for (double q : probs) {
      acc += q;
      cdf_.push_back(acc);
    }
    last_positive_ = 0;
    for (std::size_t i = 0; i < probs.size(); ++i)
      if (probs[i] > 0.0) last_positive_ = i;
  }

  std::size_t operator()(Rng& rng) const {
    const double u = rng.uniform() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto i = static_cast<std::size_t>(it - cdf_.begin());
    return std::min(i, last_positive_);
  }

 private:
  std::vector<double> cdf_;
  std::size_t last_positive_;
};

}  // namespace fcomp
