#include "ecm/hidden_variable.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ecm/degrees.hpp"

namespace ecm {

double hvm_kernel(HvmKernel kernel, double x) {
  switch (kernel) {
    case HvmKernel::truncated_product:
      return std::min(x, 1.0);
    case HvmKernel::exponential:
      return -std::expm1(-x);
  }
  return 0.0;
}

SimpleGraph generate_hvm(std::span<const double> weights, const HvmParams& p, Stream& stream) {
  const std::size_t n = weights.size();
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("generate_hvm: weights must be positive");
  const double scale = 1.0 / (p.base.mu * static_cast<double>(n));

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return weights[a] > weights[b]; });

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    const double wa = weights[order[a]] * scale;
    std::size_t b = a + 1;
    double bound = hvm_kernel(p.kernel, wa * weights[order[b]]);
    while (b < n && bound > 0.0) {
      if (bound < 1.0) {
        const double skip = std::floor(std::log(stream.uniform_pos()) / std::log1p(-bound));
        if (skip >= static_cast<double>(n - b)) break;
        b += static_cast<std::size_t>(skip);
      }
      const double q = hvm_kernel(p.kernel, wa * weights[order[b]]);
      if (stream.uniform() * bound < q) edges.emplace_back(order[a], order[b]);
      bound = q;
      ++b;
    }
  }
  return SimpleGraph::from_edges(n, edges);
}

std::vector<double> hvm_weights(const HvmParams& p, const DegreeSequence* degrees, Stream& stream) {
  if (p.weights_source == WeightSource::reuse_degrees) {
    if (degrees == nullptr) throw std::invalid_argument("hvm_weights: reuse_degrees needs a degree sequence");
    return {degrees->degrees.begin(), degrees->degrees.end()};
  }
  const auto sampler = ZipfSampler::shared(p.base.tau);
  std::vector<double> w(static_cast<std::size_t>(p.base.n));
  for (auto& x : w) x = static_cast<double>(sampler->draw(stream));
  return w;
}

SpectrumComparison compare_spectra(const ClusteringSpectrum& ecm, const ClusteringSpectrum& hvm, double base) {
  const auto eb = log_bin(ecm, base);
  const auto hb = log_bin(hvm, base);
  std::map<Degree, const SpectrumBin*> hvm_bins;
  for (const auto& b : hb.bins) hvm_bins[b.k_lo] = &b;

  SpectrumComparison out;
  std::size_t matched_hvm = 0;
  for (const auto& e : eb.bins) {
    auto it = hvm_bins.find(e.k_lo);
    if (it == hvm_bins.end()) {
      ++out.omitted;
      continue;
    }
    ++matched_hvm;
    const SpectrumBin& h = *it->second;
    if (!(e.mean_c > 0.0) || !(h.mean_c > 0.0)) {
      ++out.omitted;
      continue;
    }
    SpectrumRatio r;
    r.k_lo = e.k_lo;
    r.k_hi = e.k_hi;
    r.mean_k = e.mean_k;
    r.ecm_c = e.mean_c;
    r.hvm_c = h.mean_c;
    r.ratio = e.mean_c / h.mean_c;
    const double re = e.c_std_err / e.mean_c, rh = h.c_std_err / h.mean_c;
    r.std_err = r.ratio * std::sqrt(re * re + rh * rh);
    r.ecm_vertices = e.vertices;
    r.hvm_vertices = h.vertices;
    out.rows.push_back(r);
  }
  out.omitted += hb.bins.size() - matched_hvm;
  return out;
}

}  // namespace ecm
