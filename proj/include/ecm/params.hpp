#pragma once

#include <cstdint>

namespace ecm {

/// Riemann zeta for s > 1.
double zeta(double s);

/// Model parameters for the i.i.d. Zipf-degree configuration model.
///
/// The degree law is P(D = k) = k^-tau / zeta(tau) for k >= 1, so the
/// normalization and the mean are exact: C = 1/zeta(tau) and
/// mu = zeta(tau - 1)/zeta(tau). A = -Gamma(2 - tau) is the constant shared
/// by every limit of c(k).
struct ModelParams {
  double tau = 2.5;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  double c_norm = 0.0;
  double mu = 0.0;
  double a_const = 0.0;

  /// Throws std::invalid_argument unless 2 < tau < 3 and n >= 1.
  static ModelParams create(double tau, std::int64_t n, std::uint64_t seed = 0);
};

}  // namespace ecm
