#include "ecm/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "ecm/triangles.hpp"

namespace ecm {

namespace {

void finalize(ClusteringSpectrum& spec) {
  for (auto& [k, e] : spec.per_k) {
    const double kk = static_cast<double>(k);
    e.c = 2.0 * static_cast<double>(e.delta) / (static_cast<double>(e.vertices) * kk * (kk - 1.0));
  }
}

}  // namespace

ClusteringSpectrum clustering_spectrum(const SimpleGraph& g, DegreeBasis basis) {
  const auto delta = triangles_per_vertex(g);
  return clustering_spectrum(g, delta, basis);
}

ClusteringSpectrum clustering_spectrum(const SimpleGraph& g, std::span<const std::uint64_t> delta,
                                       DegreeBasis basis) {
  if (delta.size() != g.num_vertices()) throw std::invalid_argument("clustering_spectrum: triangle count size mismatch");
  const DegreeSequence* original = g.source_degrees();
  if (basis == DegreeBasis::original && original == nullptr)
    throw std::invalid_argument("clustering_spectrum: original basis requires an attached degree sequence");

  ClusteringSpectrum spec;
  spec.n = g.num_vertices();
  spec.basis = basis;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const Degree k = basis == DegreeBasis::erased ? g.degree(v) : original->degrees[v];
    if (k < 2) continue;
    // Under the original basis a vertex may have fewer than two erased
    // neighbors; its local coefficient still uses k(k-1).
    const double kk = static_cast<double>(k);
    const double local = 2.0 * static_cast<double>(delta[v]) / (kk * (kk - 1.0));
    auto& e = spec.per_k[k];
    ++e.vertices;
    e.delta += delta[v];
    e.sum_local_sq += local * local;
  }
  finalize(spec);
  return spec;
}

ClusteringSpectrum pool_spectra(std::span<const ClusteringSpectrum> spectra) {
  ClusteringSpectrum pooled;
  if (spectra.empty()) return pooled;
  pooled.n = spectra.front().n;
  pooled.basis = spectra.front().basis;
  for (const auto& s : spectra) {
    if (s.n != pooled.n || s.basis != pooled.basis)
      throw std::invalid_argument("pool_spectra: spectra differ in size or degree basis");
    for (const auto& [k, e] : s.per_k) {
      auto& acc = pooled.per_k[k];
      acc.vertices += e.vertices;
      acc.delta += e.delta;
      acc.sum_local_sq += e.sum_local_sq;
    }
  }
  finalize(pooled);
  return pooled;
}

int bin_index(Degree k, double base) {
  const double ratio = static_cast<double>(k) / 2.0;
  int m = static_cast<int>(std::floor(std::log(ratio) / std::log(base)));
  while (2.0 * std::pow(base, m + 1) <= static_cast<double>(k)) ++m;
  while (m > 0 && 2.0 * std::pow(base, m) > static_cast<double>(k)) --m;
  return m;
}

BinnedSpectrum log_bin(const ClusteringSpectrum& spec, double base) {
  if (!(base > 1.0)) throw std::invalid_argument("log_bin: base must exceed 1");
  BinnedSpectrum out;
  out.base = base;

  struct Acc {
    double weight = 0, k_sum = 0, c_sum = 0, c_sq = 0;
  };
  std::map<int, Acc> acc;
  for (const auto& [k, e] : spec.per_k) {
    auto& a = acc[bin_index(k, base)];
    const double w = static_cast<double>(e.vertices);
    a.weight += w;
    a.k_sum += w * static_cast<double>(k);
    a.c_sum += w * e.c;
    a.c_sq += e.sum_local_sq;
  }
  for (const auto& [m, a] : acc) {
    SpectrumBin bin;
    bin.k_lo = static_cast<Degree>(std::ceil(2.0 * std::pow(base, m)));
    bin.k_hi = static_cast<Degree>(std::ceil(2.0 * std::pow(base, m + 1))) - 1;
    bin.vertices = static_cast<std::uint64_t>(a.weight);
    bin.mean_k = a.k_sum / a.weight;
    bin.mean_c = a.c_sum / a.weight;
    if (a.weight > 1) {
      const double var = std::max(0.0, (a.c_sq - a.weight * bin.mean_c * bin.mean_c) / (a.weight - 1));
      bin.c_std_err = std::sqrt(var / a.weight);
    }
    out.bins.push_back(bin);
  }
  return out;
}

SlopeFit fit_slope(const BinnedSpectrum& binned, double k_lo, double k_hi) {
  std::vector<double> xs, ys;
  for (const auto& b : binned.bins) {
    if (b.vertices == 0 || !(b.mean_c > 0.0)) continue;
    if (b.mean_k < k_lo || b.mean_k > k_hi) continue;
    xs.push_back(std::log(b.mean_k));
    ys.push_back(std::log(b.mean_c));
  }
  if (xs.size() < 3)
    throw std::invalid_argument("fit_slope: need at least 3 non-empty bins in range, found " +
                                std::to_string(xs.size()));
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  SlopeFit fit;
  fit.bins_used = xs.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    sse += r * r;
  }
  fit.std_err = std::sqrt(sse / (m - 2.0) / sxx);
  return fit;
}

}  // namespace ecm
