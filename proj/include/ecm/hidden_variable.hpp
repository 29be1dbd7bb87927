#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ecm/params.hpp"
#include "ecm/rng.hpp"
#include "ecm/simple_graph.hpp"
#include "ecm/spectrum.hpp"

namespace ecm {

enum class HvmKernel { truncated_product, exponential };
enum class WeightSource { fresh_powerlaw, reuse_degrees };

struct HvmParams {
  HvmKernel kernel = HvmKernel::exponential;
  WeightSource weights_source = WeightSource::reuse_degrees;
  ModelParams base;
};

/// Connection probability for x = w_i w_j / (mu n): min(x, 1) or 1 - e^-x.
double hvm_kernel(HvmKernel kernel, double x);

/// Rank-1 inhomogeneous random graph: each pair {i, j} is present
/// independently with probability kernel(w_i w_j / (mu n)), where n is the
/// number of weights and mu comes from p.base.
///
/// Pairs are visited in order of decreasing weight with geometric skipping
/// (Miller-Hagberg): the kernel at the current partner bounds every later
/// partner, so skipped runs are drawn from a geometric law and candidates are
/// thinned by the exact kernel ratio. Expected time O(n + m).
SimpleGraph generate_hvm(std::span<const double> weights, const HvmParams& p, Stream& stream);

/// Weights per the chosen source: the supplied degrees, or a fresh Zipf sample.
std::vector<double> hvm_weights(const HvmParams& p, const DegreeSequence* degrees, Stream& stream);

struct SpectrumRatio {
  Degree k_lo = 0;
  Degree k_hi = 0;
  double mean_k = 0.0;
  double ecm_c = 0.0;
  double hvm_c = 0.0;
  double ratio = 0.0;
  double std_err = 0.0;
  std::uint64_t ecm_vertices = 0;
  std::uint64_t hvm_vertices = 0;
};

struct SpectrumComparison {
  std::vector<SpectrumRatio> rows;
  std::size_t omitted = 0;  // bins present (or non-zero) in only one spectrum
};

/// Binned ECM/HVM ratio with delta-method standard errors. Bins missing or
/// zero in either spectrum are dropped and counted in `omitted`.
SpectrumComparison compare_spectra(const ClusteringSpectrum& ecm, const ClusteringSpectrum& hvm, double base = 1.3);

}  // namespace ecm
