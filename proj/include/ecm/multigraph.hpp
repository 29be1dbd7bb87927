#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ecm/degrees.hpp"
#include "ecm/rng.hpp"

namespace ecm {

using Vertex = std::uint32_t;

/// One vertex pair {u, v} with u < v and its edge multiplicity X_uv >= 1.
struct PairMultiplicity {
  Vertex u = 0;
  Vertex v = 0;
  std::uint32_t count = 0;

  friend bool operator==(const PairMultiplicity&, const PairMultiplicity&) = default;
};

/// Configuration-model outcome.
///
/// `pairs` is a sparse symmetric map stored as a vector sorted by (u, v);
/// lookups are binary searches. Every half-edge is matched once, so
/// sum(count) + sum(self_loops) == l_n / 2.
class MultiGraph {
 public:
  MultiGraph(std::size_t n, std::vector<PairMultiplicity> pairs, std::vector<std::uint32_t> self_loops,
             std::shared_ptr<const DegreeSequence> degrees);

  std::size_t num_vertices() const { return n_; }
  std::span<const PairMultiplicity> pairs() const { return pairs_; }
  std::span<const std::uint32_t> self_loops() const { return self_loops_; }
  const DegreeSequence& degrees() const { return *degrees_; }
  const std::shared_ptr<const DegreeSequence>& degrees_ptr() const { return degrees_; }

  /// X_uv; zero when absent or u == v.
  std::uint32_t multiplicity(Vertex u, Vertex v) const;

  bool is_simple() const;

 private:
  std::size_t n_;
  std::vector<PairMultiplicity> pairs_;
  std::vector<std::uint32_t> self_loops_;
  std::shared_ptr<const DegreeSequence> degrees_;
};

/// Uniform perfect matching of the l_n half-edges: Fisher-Yates shuffle of
/// the half-edge array, then consecutive entries are paired.
/// Throws std::invalid_argument when l_n is odd.
MultiGraph pair_half_edges(std::shared_ptr<const DegreeSequence> degs, Stream& stream);
MultiGraph pair_half_edges(const DegreeSequence& degs, Stream& stream);

}  // namespace ecm
