#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ecm/params.hpp"
#include "ecm/rng.hpp"

namespace ecm {

using Degree = std::int64_t;

/// Sampled degrees D_1..D_n with parity bookkeeping. Invariants: every
/// degree is >= 1, l_n is even and equals the sum of degrees, and when
/// parity_fixed is set the last entry carries one extra half-edge.
struct DegreeSequence {
  std::vector<Degree> degrees;
  bool parity_fixed = false;
  std::int64_t l_n = 0;
  Degree d_max = 0;

  std::size_t size() const { return degrees.size(); }

  /// Builds a sequence from explicit degrees, applying the parity fix.
  /// Throws std::invalid_argument on an entry below 1.
  static DegreeSequence from_degrees(std::vector<Degree> raw);
};

/// Inverse-CDF sampler for P(D = k) = k^-tau / zeta(tau).
///
/// Holds the survival function S(k) = P(D >= k) for k <= table_limit,
/// summed from the tail upwards so small tail masses keep full relative
/// precision. Draws beyond the table invert the midpoint approximation
/// S(k) ~ (k - 1/2)^(1 - tau) / ((tau - 1) zeta(tau)).
class ZipfSampler {
 public:
  static constexpr Degree kDefaultTableLimit = Degree{1} << 20;

  explicit ZipfSampler(double tau, Degree table_limit = kDefaultTableLimit);

  /// Shared instance per tau (default table size); thread-safe.
  static std::shared_ptr<const ZipfSampler> shared(double tau);

  Degree draw(Stream& stream) const;

  /// Maps a survival variate v in (0, 1] to the largest k with S(k) >= v.
  Degree invert(double v) const;

  double tau() const { return tau_; }
  double pmf(Degree k) const;
  double survival(Degree k) const;
  double normalizer() const { return zeta_; }
  Degree table_limit() const { return static_cast<Degree>(survival_.size()) - 2; }

 private:
  double tau_;
  double zeta_;
  std::vector<double> survival_;  // survival_[k] = S(k), k = 1..limit+1
};

/// n i.i.d. Zipf draws with the parity fix applied.
DegreeSequence sample_degrees(const ModelParams& params, Stream& stream);

/// |L_n - mu n| <= n^(1/(tau-1)).
bool jn_holds(const DegreeSequence& degs, const ModelParams& params);

}  // namespace ecm
