#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ecm/simple_graph.hpp"

namespace ecm {

enum class DegreeBasis { erased, original };

/// Per-degree aggregate: N_k, Delta_k and c(k) = 2 Delta_k / (N_k k (k - 1)).
/// `sum_local_sq` accumulates the squared per-vertex local coefficients so
/// that binned standard errors can be formed after pooling.
struct SpectrumEntry {
  std::uint64_t vertices = 0;
  std::uint64_t delta = 0;
  double c = 0.0;
  double sum_local_sq = 0.0;
};

/// c(k) for every k >= 2 with N_k >= 1; other degrees are absent.
struct ClusteringSpectrum {
  std::map<Degree, SpectrumEntry> per_k;
  std::size_t n = 0;
  DegreeBasis basis = DegreeBasis::erased;
};

struct SpectrumBin {
  Degree k_lo = 0;  // inclusive
  Degree k_hi = 0;  // inclusive
  double mean_k = 0.0;
  double mean_c = 0.0;
  std::uint64_t vertices = 0;
  double c_std_err = 0.0;
};

/// Geometric bins [2 base^m, 2 base^(m+1)); only non-empty bins are kept.
struct BinnedSpectrum {
  std::vector<SpectrumBin> bins;
  double base = 1.3;
};

/// Groups vertices by degree (erased degree or the attached original D_i).
/// Throws std::invalid_argument for DegreeBasis::original without an
/// attached degree sequence.
ClusteringSpectrum clustering_spectrum(const SimpleGraph& g, DegreeBasis basis = DegreeBasis::erased);
ClusteringSpectrum clustering_spectrum(const SimpleGraph& g, std::span<const std::uint64_t> delta,
                                       DegreeBasis basis = DegreeBasis::erased);

/// Sums N_k, Delta_k over replicas of equal n and basis.
ClusteringSpectrum pool_spectra(std::span<const ClusteringSpectrum> spectra);

/// Index m of the geometric bin holding k.
int bin_index(Degree k, double base);

/// Throws std::invalid_argument when base <= 1.
BinnedSpectrum log_bin(const ClusteringSpectrum& spec, double base = 1.3);

struct SlopeFit {
  double slope = 0.0;
  double std_err = 0.0;
  double intercept = 0.0;
  std::size_t bins_used = 0;
};

/// Least-squares slope of log mean_c against log mean_k over bins with
/// mean_k in [k_lo, k_hi] and mean_c > 0. Throws std::invalid_argument when
/// fewer than three bins qualify.
SlopeFit fit_slope(const BinnedSpectrum& binned, double k_lo, double k_hi);

}  // namespace ecm
