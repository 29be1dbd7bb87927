#include "ecm/simple_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecm {

SimpleGraph SimpleGraph::from_sorted_unique(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
  SimpleGraph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.resize(g.offsets_[n]);
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges sorted by (u, v) with u < v: every list receives its smaller
  // neighbors first (ascending), then its larger ones (ascending).
  for (const auto& [u, v] : edges) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  g.erased_degrees_.resize(n);
  for (std::size_t v = 0; v < n; ++v) g.erased_degrees_[v] = static_cast<Degree>(g.offsets_[v + 1] - g.offsets_[v]);
  return g;
}

SimpleGraph SimpleGraph::from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
  std::vector<std::pair<Vertex, Vertex>> clean;
  clean.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("SimpleGraph::from_edges: vertex id out of range");
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    clean.emplace_back(u, v);
  }
  std::sort(clean.begin(), clean.end());
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());
  return from_sorted_unique(n, clean);
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

void SimpleGraph::attach_degrees(std::shared_ptr<const DegreeSequence> degs) {
  if (degs && degs->size() != num_vertices())
    throw std::invalid_argument("attach_degrees: degree sequence size mismatch");
  source_ = std::move(degs);
}

SimpleGraph erase(const MultiGraph& mg) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(mg.pairs().size());
  for (const auto& p : mg.pairs()) edges.emplace_back(p.u, p.v);
  SimpleGraph g = SimpleGraph::from_sorted_unique(mg.num_vertices(), edges);
  g.source_ = mg.degrees_ptr();
  return g;
}

}  // namespace ecm
