#include "ecm/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "ecm/triangles.hpp"

namespace ecm {

RegimeWindow RegimeWindow::make(std::int64_t k, const ModelParams& params, double epsilon, double a_II) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("RegimeWindow: epsilon must lie in (0,1), got " + std::to_string(epsilon));
  if (k < 1) throw std::invalid_argument("RegimeWindow: k must be positive");
  RegimeWindow w;
  w.k = k;
  w.n = params.n;
  w.mu = params.mu;
  w.epsilon = epsilon;
  w.a_II = a_II;
  w.range = classify_range(static_cast<double>(k), static_cast<double>(params.n), params.tau, a_II);
  return w;
}

bool window_contains(const RegimeWindow& w, Degree d_u, Degree d_v) {
  const double mun = w.mu * static_cast<double>(w.n);
  const double du = static_cast<double>(d_u), dv = static_cast<double>(d_v);
  const double eps = w.epsilon;
  switch (w.range) {
    case Range::I:
    case Range::II: {
      const double prod = du * dv;
      if (prod < eps * mun || prod > mun / eps) return false;
      if (w.range == Range::I) return true;
      const double cap = mun / (static_cast<double>(w.k) * eps);
      return du < cap && dv < cap;
    }
    case Range::III: {
      const double centre = mun / static_cast<double>(w.k);
      const double lo = eps * centre, hi = centre / eps;
      return du >= lo && du <= hi && dv >= lo && dv <= hi;
    }
  }
  return false;
}

std::vector<TriangleDecomposition> decompose_triangles(const SimpleGraph& g, const DegreeSequence& degs,
                                                       std::span<const RegimeWindow> windows) {
  if (degs.size() != g.num_vertices()) throw std::invalid_argument("decompose_triangles: size mismatch");
  std::vector<TriangleDecomposition> out(windows.size());
  if (windows.empty()) return out;

  Degree k_max = 0;
  for (const auto& w : windows) k_max = std::max<Degree>(k_max, w.k);
  std::vector<std::vector<std::size_t>> by_k(static_cast<std::size_t>(k_max) + 1);
  for (std::size_t i = 0; i < windows.size(); ++i) by_k[static_cast<std::size_t>(windows[i].k)].push_back(i);

  auto credit = [&](Vertex focal, Vertex x, Vertex y) {
    const Degree k = g.degree(focal);
    if (k > k_max) return;
    for (std::size_t i : by_k[static_cast<std::size_t>(k)]) {
      ++out[i].delta_k_total;
      if (window_contains(windows[i], degs.degrees[x], degs.degrees[y])) ++out[i].delta_k_window;
    }
  };
  for_each_triangle(g, [&](Vertex a, Vertex b, Vertex c) {
    credit(a, b, c);
    credit(b, a, c);
    credit(c, a, b);
  });
  for (auto& d : out)
    if (d.delta_k_total > 0)
      d.fraction = static_cast<double>(d.delta_k_window) / static_cast<double>(d.delta_k_total);
  return out;
}

TriangleDecomposition decompose_triangles(const SimpleGraph& g, const DegreeSequence& degs, std::int64_t k,
                                          const RegimeWindow& w) {
  if (k != w.k) throw std::invalid_argument("decompose_triangles: window was built for a different k");
  return decompose_triangles(g, degs, std::span<const RegimeWindow>(&w, 1)).front();
}

double triangle_probability_estimate(Degree d_w, Degree d_u, Degree d_v, std::int64_t l_n) {
  if (l_n <= 0) throw std::invalid_argument("triangle_probability_estimate: l_n must be positive");
  const double l = static_cast<double>(l_n);
  auto factor = [l](Degree a, Degree b) {
    return -std::expm1(-static_cast<double>(a) * static_cast<double>(b) / l);
  };
  return factor(d_w, d_u) * factor(d_w, d_v) * factor(d_u, d_v);
}

std::vector<DegreeRange> degree_ranges(Degree max_degree, Degree exact_up_to, double ratio) {
  if (!(ratio > 1.0)) throw std::invalid_argument("degree_ranges: ratio must exceed 1");
  std::vector<DegreeRange> out;
  for (Degree d = 1; d <= std::min(exact_up_to, max_degree); ++d) out.push_back({d, d});
  Degree lo = exact_up_to + 1;
  while (lo <= max_degree) {
    const auto hi = std::max(lo, static_cast<Degree>(std::floor(static_cast<double>(lo) * ratio)));
    out.push_back({lo, std::min(hi, max_degree)});
    lo = hi + 1;
  }
  return out;
}

std::vector<DegreeCell> default_degree_cells(Degree max_degree, Degree exact_up_to, double ratio) {
  const auto ranges = degree_ranges(max_degree, exact_up_to, ratio);
  std::vector<DegreeCell> cells;
  for (std::size_t a = 0; a < ranges.size(); ++a)
    for (std::size_t b = a; b < ranges.size(); ++b) cells.push_back({ranges[a], ranges[b]});
  return cells;
}

std::vector<ConnectionRow> empirical_connection_probability(std::span<const ReplicaView> replicas,
                                                            std::span<const DegreeCell> cells) {
  if (replicas.empty()) throw std::invalid_argument("empirical_connection_probability: no replicas");

  std::vector<DegreeRange> ranges;
  for (const auto& c : cells)
    for (const auto& r : {c.u, c.v}) {
      if (r.lo > r.hi) throw std::invalid_argument("empirical_connection_probability: empty degree range");
      if (std::find(ranges.begin(), ranges.end(), r) == ranges.end()) ranges.push_back(r);
    }
  std::sort(ranges.begin(), ranges.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < ranges.size(); ++i)
    if (ranges[i].lo <= ranges[i - 1].hi)
      throw std::invalid_argument("empirical_connection_probability: overlapping degree ranges");

  auto range_of = [&ranges](Degree d) -> std::ptrdiff_t {
    auto it = std::upper_bound(ranges.begin(), ranges.end(), d, [](Degree x, const DegreeRange& r) { return x < r.lo; });
    if (it == ranges.begin()) return -1;
    --it;
    return it->contains(d) ? it - ranges.begin() : -1;
  };
  auto index_of = [&ranges](const DegreeRange& r) {
    return std::find(ranges.begin(), ranges.end(), r) - ranges.begin();
  };

  struct Pooled {
    double pairs = 0, edges = 0, model_mass = 0;
  };
  std::vector<Pooled> pooled(cells.size());
  const std::size_t R = ranges.size();

  for (const auto& rep : replicas) {
    const SimpleGraph& g = *rep.graph;
    const DegreeSequence& degs = *rep.degrees;
    if (degs.size() != g.num_vertices()) throw std::invalid_argument("empirical_connection_probability: size mismatch");
    std::vector<double> count(R, 0.0), degree_sum(R, 0.0);
    std::vector<std::ptrdiff_t> slot(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      slot[v] = range_of(degs.degrees[v]);
      if (slot[v] < 0) continue;
      count[static_cast<std::size_t>(slot[v])] += 1.0;
      degree_sum[static_cast<std::size_t>(slot[v])] += static_cast<double>(degs.degrees[v]);
    }
    std::map<std::pair<std::ptrdiff_t, std::ptrdiff_t>, double> edges;
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      if (slot[u] < 0) continue;
      for (Vertex v : g.neighbors(u)) {
        if (v <= u || slot[v] < 0) continue;
        edges[std::minmax(slot[u], slot[v])] += 1.0;
      }
    }
    const double l_n = static_cast<double>(degs.l_n);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::ptrdiff_t iu = index_of(cells[i].u), iv = index_of(cells[i].v);
      const auto [a, b] = std::minmax(iu, iv);
      const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
      const double pairs = a == b ? count[ua] * (count[ua] - 1.0) / 2.0 : count[ua] * count[ub];
      if (pairs <= 0) continue;
      const double mean_a = degree_sum[ua] / count[ua], mean_b = degree_sum[ub] / count[ub];
      pooled[i].pairs += pairs;
      pooled[i].model_mass += pairs * -std::expm1(-mean_a * mean_b / l_n);
      if (auto it = edges.find({a, b}); it != edges.end()) pooled[i].edges += it->second;
    }
  }

  std::vector<ConnectionRow> rows;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& p = pooled[i];
    if (p.pairs <= 0) continue;
    ConnectionRow row;
    row.cell = cells[i];
    row.pairs = static_cast<std::uint64_t>(p.pairs);
    row.edges = static_cast<std::uint64_t>(p.edges);
    row.empirical_p = p.edges / p.pairs;
    row.model_p = p.model_mass / p.pairs;
    row.std_err = std::sqrt(row.empirical_p * (1.0 - row.empirical_p) / p.pairs);
    rows.push_back(row);
  }
  return rows;
}

AlphaBand contributing_alpha_band(double beta, double tau, double epsilon) {
  if (!(tau > 2.0 && tau < 3.0)) throw std::invalid_argument("contributing_alpha_band: tau outside (2,3)");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("contributing_alpha_band: epsilon outside (0,1)");
  if (!(beta >= 0.0 && beta < 1.0 / (tau - 1.0)))
    throw std::invalid_argument("contributing_alpha_band: beta outside [0, 1/(tau-1))");
  AlphaBand band;
  if (beta < 0.5) {
    band.product_constraint = true;
    band.alpha_sum = 1.0;
    band.alpha_lo = std::max((tau - 2.0) / (tau - 1.0), beta);
    band.alpha_hi = std::min(1.0 / (tau - 1.0), 1.0 - beta);
  } else {
    band.product_constraint = false;
    band.alpha_lo = band.alpha_hi = 1.0 - beta;
    band.alpha_sum = 2.0 * (1.0 - beta);
  }
  return band;
}

}  // namespace ecm
