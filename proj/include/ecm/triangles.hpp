#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ecm/multigraph.hpp"
#include "ecm/simple_graph.hpp"

namespace ecm {

/// Forward adjacency under the total order (degree, id): every edge points
/// from its lower-ranked to its higher-ranked endpoint, so each triangle is
/// reachable from exactly one (lowest-ranked) corner.
class DegreeOrientation {
 public:
  explicit DegreeOrientation(const SimpleGraph& g);

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::span<const Vertex> out(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<Vertex> targets_;
};

/// Calls visit(u, v, w) once per triangle of g. Serial.
template <class Visit>
void for_each_triangle(const SimpleGraph& g, Visit&& visit) {
  const DegreeOrientation fwd(g);
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> mark(n, static_cast<Vertex>(-1));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : fwd.out(u)) mark[v] = u;
    for (Vertex v : fwd.out(u))
      for (Vertex w : fwd.out(v))
        if (mark[w] == u) visit(u, v, w);
  }
}

/// Delta(w): number of triangles through w. OpenMP-parallel over vertices.
std::vector<std::uint64_t> triangles_per_vertex(const SimpleGraph& g);

/// Serial reference: sorted-list merge intersection with id ordering u < v < w.
std::vector<std::uint64_t> triangles_per_vertex_serial(const SimpleGraph& g);

/// Number of distinct triangles (vertex perspective).
std::uint64_t count_triangles(const SimpleGraph& g);

/// sum_{i<j<k} X_ij X_jk X_ik over the multigraph.
std::uint64_t count_triangles_edge_perspective(const MultiGraph& mg);

/// 6 T / sum_v deg(v)(deg(v) - 1). Throws std::domain_error without wedges.
double global_clustering(const SimpleGraph& g);

}  // namespace ecm
