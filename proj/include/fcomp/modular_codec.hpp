// Quantize-then-compress pipeline for instances whose maximal hyperedges
// partition the source alphabet: q(x) is the unique maximal edge holding x,
// the quantized stream is LZW-coded, and the decoder outputs g(q(x), y).
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fcomp/core.hpp"
#include "fcomp/entropy.hpp"
#include "fcomp/hypergraph.hpp"
#include "fcomp/lzw.hpp"

namespace fcomp {

inline std::vector<std::uint32_t> quantize_stream(const Clustering& clustering, std::span<const std::size_t> xs) {
  std::vector<std::uint32_t> out;
  out.reserve(xs.size());
  for (std::size_t x : xs) out.push_back(static_cast<std::uint32_t>(clustering.edge_of(x)));
  return out;
}

/// H(q(X)) in bits.
inline double quantized_entropy(const ProblemInstance& inst, const Clustering& clustering) {
  std::vector<double> mass(clustering.edges.size(), 0.0);
  const auto px = inst.marginal_x();
  for (std::size_t x = 0; x < inst.nx; ++x)
    if (px[x] > 0.0) mass[clustering.edge_of(x)] += px[x];
  return entropy_bits(mass);
}

/// Precomputed state of the modular codec for one instance.
class ModularCodec {
 public:
  explicit ModularCodec(const ProblemInstance& inst)
      : inst_(inst),
        graph_(build_hypergraph(inst)),
        clustering_(unique_clustering(inst, graph_)),
        recon_(build_reconstruction(inst, graph_)) {
    if (!is_independent(inst))
      throw PreconditionError("modular codec requires X independent of Y (no Slepian-Wolf stage)");
  }

  const Hypergraph& graph() const { return graph_; }
  const Clustering& clustering() const { return clustering_; }
  const ReconstructionMap& reconstruction() const { return recon_; }

  std::uint32_t alphabet_size() const { return static_cast<std::uint32_t>(graph_.maximal_edges.size()); }

  EncodedBlock encode(std::span<const std::size_t> xs) const {
    return lzw_encode(quantize_stream(clustering_, xs), alphabet_size());
  }

  std::vector<Point> decode(const EncodedBlock& block, std::span<const std::size_t> ys) const {
    const auto symbols = lzw_decode(block);
    if (symbols.size() != ys.size()) throw std::invalid_argument("side-information length mismatch");
    std::vector<Point> z;
    z.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) z.push_back(recon_.at(symbols[i], ys[i]));
    return z;
  }

 private:
  ProblemInstance inst_;
  Hypergraph graph_;
  Clustering clustering_;
  ReconstructionMap recon_;
};

struct ModularResult {
  EncodedBlock block;
  std::vector<Point> reconstructions;
  ErrorReport report;
};

inline ModularResult modular_pipeline(const ProblemInstance& inst, std::span<const std::size_t> xs,
                                      std::span<const std::size_t> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("modular_pipeline: sequence lengths differ");
  const ModularCodec codec(inst);
  ModularResult r;
  r.block = codec.encode(xs);
  r.reconstructions = codec.decode(r.block, ys);
  r.report = p_avg(inst, xs, ys, r.reconstructions);
  return r;
}

}  // namespace fcomp
