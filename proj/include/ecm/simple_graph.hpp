#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "ecm/degrees.hpp"
#include "ecm/multigraph.hpp"

namespace ecm {

/// Undirected simple graph in CSR form with sorted neighbor lists.
///
/// Graphs produced by erase() keep a handle to the generating degree
/// sequence so that analyses can group by original degree D_i.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  /// Builds from an arbitrary undirected edge list; drops self-loops and
  /// duplicate edges in either orientation.
  static SimpleGraph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  Degree degree(Vertex v) const { return static_cast<Degree>(offsets_[v + 1] - offsets_[v]); }
  const std::vector<Degree>& erased_degrees() const { return erased_degrees_; }

  bool has_edge(Vertex u, Vertex v) const;

  const DegreeSequence* source_degrees() const { return source_.get(); }
  const std::shared_ptr<const DegreeSequence>& source_degrees_ptr() const { return source_; }
  void attach_degrees(std::shared_ptr<const DegreeSequence> degs);

 private:
  friend SimpleGraph erase(const MultiGraph& mg);
  static SimpleGraph from_sorted_unique(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

  std::vector<std::uint64_t> offsets_;
  std::vector<Vertex> neighbors_;
  std::vector<Degree> erased_degrees_;
  std::shared_ptr<const DegreeSequence> source_;
};

/// Erased projection: merges multi-edges and removes self-loops.
SimpleGraph erase(const MultiGraph& mg);

}  // namespace ecm
