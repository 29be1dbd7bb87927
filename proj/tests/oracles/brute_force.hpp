#pragma once

// Test-only reference computations. Nothing here calls the library's
// counting or sampling code; graphs are handled as dense adjacency matrices.

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

struct Dense {
  std::size_t n = 0;
  std::vector<std::vector<char>> adj;

  explicit Dense(std::size_t size) : n(size), adj(size, std::vector<char>(size, 0)) {}

  template <class Edges>
  static Dense from_edges(std::size_t size, const Edges& edges) {
    Dense d(size);
    for (const auto& [u, v] : edges)
      if (u != v) d.adj[u][v] = d.adj[v][u] = 1;
    return d;
  }

  std::int64_t degree(std::size_t v) const {
    std::int64_t d = 0;
    for (std::size_t u = 0; u < n; ++u) d += adj[v][u];
    return d;
  }
};

/// O(n^3): every triple i<j<k with all three edges credits each corner.
inline std::vector<std::uint64_t> triangles_per_vertex(const Dense& g) {
  std::vector<std::uint64_t> t(g.n, 0);
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = i + 1; j < g.n; ++j)
      for (std::size_t k = j + 1; k < g.n; ++k)
        if (g.adj[i][j] && g.adj[j][k] && g.adj[i][k]) {
          ++t[i];
          ++t[j];
          ++t[k];
        }
  return t;
}

struct Entry {
  std::uint64_t vertices = 0;
  std::uint64_t delta = 0;
  double c = 0.0;
};

/// c(k) by the defining formula, grouping by the supplied degrees.
inline std::map<std::int64_t, Entry> spectrum(const Dense& g, const std::vector<std::int64_t>& degree_of) {
  const auto t = triangles_per_vertex(g);
  std::map<std::int64_t, Entry> out;
  for (std::size_t v = 0; v < g.n; ++v) {
    const auto k = degree_of[v];
    if (k < 2) continue;
    out[k].vertices += 1;
    out[k].delta += t[v];
  }
  for (auto& [k, e] : out) e.c = 2.0 * double(e.delta) / (double(e.vertices) * double(k) * double(k - 1));
  return out;
}

inline std::map<std::int64_t, Entry> spectrum(const Dense& g) {
  std::vector<std::int64_t> deg(g.n);
  for (std::size_t v = 0; v < g.n; ++v) deg[v] = g.degree(v);
  return spectrum(g, deg);
}

/// Closed wedges over all wedges, counted pair by pair.
inline double global_clustering(const Dense& g) {
  double closed = 0, wedges = 0;
  for (std::size_t w = 0; w < g.n; ++w)
    for (std::size_t u = 0; u < g.n; ++u)
      for (std::size_t v = u + 1; v < g.n; ++v)
        if (g.adj[w][u] && g.adj[w][v] && u != w && v != w) {
          wedges += 1;
          closed += g.adj[u][v];
        }
  return closed / wedges;
}

/// Edge-perspective count from a dense multiplicity matrix.
inline std::uint64_t edge_perspective(const std::vector<std::vector<std::uint32_t>>& x) {
  std::uint64_t total = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) total += std::uint64_t{x[i][j]} * x[j][k] * x[i][k];
  return total;
}

/// zeta(s) by direct summation with an integral tail correction.
inline double zeta_series(double s, std::int64_t terms = 2'000'000) {
  double sum = 0.0;
  for (std::int64_t k = terms; k >= 1; --k) sum += std::pow(double(k), -s);
  const double m = double(terms) + 0.5;
  return sum + std::pow(m, 1.0 - s) / (s - 1.0);
}

}  // namespace oracle
