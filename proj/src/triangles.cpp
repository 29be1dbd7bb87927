#include "ecm/triangles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace ecm {

DegreeOrientation::DegreeOrientation(const SimpleGraph& g) {
  const std::size_t n = g.num_vertices();
  auto before = [&g](Vertex a, Vertex b) {
    const Degree da = g.degree(a), db = g.degree(b);
    return da < db || (da == db && a < b);
  };
  offsets_.assign(n + 1, 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u))
      if (before(u, v)) ++offsets_[u + 1];
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  targets_.resize(offsets_[n]);
  for (Vertex u = 0; u < n; ++u) {
    auto cursor = offsets_[u];
    for (Vertex v : g.neighbors(u))
      if (before(u, v)) targets_[cursor++] = v;
  }
}

std::vector<std::uint64_t> triangles_per_vertex(const SimpleGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint64_t> delta(n, 0);
  if (n == 0) return delta;
  const DegreeOrientation fwd(g);
  const auto count = static_cast<std::int64_t>(n);

#pragma omp parallel
  {
    std::vector<Vertex> mark(n, static_cast<Vertex>(-1));
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t ui = 0; ui < count; ++ui) {
      const auto u = static_cast<Vertex>(ui);
      const auto out_u = fwd.out(u);
      if (out_u.size() < 2) continue;
      for (Vertex v : out_u) mark[v] = u;
      std::uint64_t at_u = 0;
      for (Vertex v : out_u) {
        std::uint64_t at_v = 0;
        for (Vertex w : fwd.out(v)) {
          if (mark[w] != u) continue;
          ++at_v;
#pragma omp atomic update
          ++delta[w];
        }
        if (at_v == 0) continue;
        at_u += at_v;
#pragma omp atomic update
        delta[v] += at_v;
      }
      if (at_u != 0) {
#pragma omp atomic update
        delta[u] += at_u;
      }
    }
  }
  return delta;
}

std::vector<std::uint64_t> triangles_per_vertex_serial(const SimpleGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint64_t> delta(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    const auto nu = g.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      // common neighbors w > v
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++delta[u];
          ++delta[v];
          ++delta[*a];
          ++a;
          ++b;
        }
      }
    }
  }
  return delta;
}

std::uint64_t count_triangles(const SimpleGraph& g) {
  const auto delta = triangles_per_vertex(g);
  return std::accumulate(delta.begin(), delta.end(), std::uint64_t{0}) / 3;
}

std::uint64_t count_triangles_edge_perspective(const MultiGraph& mg) {
  const SimpleGraph g = erase(mg);
  std::uint64_t total = 0;
  for_each_triangle(g, [&](Vertex u, Vertex v, Vertex w) {
    total += std::uint64_t{mg.multiplicity(u, v)} * mg.multiplicity(v, w) * mg.multiplicity(u, w);
  });
  return total;
}

double global_clustering(const SimpleGraph& g) {
  double wedges = 0.0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    wedges += d * (d - 1.0);
  }
  if (wedges == 0.0) throw std::domain_error("global_clustering: graph has no wedge");
  return 6.0 * static_cast<double>(count_triangles(g)) / wedges;
}

}  // namespace ecm
