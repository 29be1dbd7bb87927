#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecm/params.hpp"
#include "ecm/ranges.hpp"

namespace ecm {

/// A = -Gamma(2 - tau), evaluated as Gamma(3 - tau)/(tau - 2) so the gamma
/// function only sees positive arguments. Throws std::invalid_argument
/// outside (2,3).
double constant_A(double tau);

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  /// Upper cut T of the infinite domain; <= 0 selects T from the tail bound
  /// 1 - e^-x <= min(1, x) so the discarded mass stays below abs_tol / 4.
  double truncation_bound = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // quadrature estimate plus truncation bound
  double lower_cut = 0.0;
  double upper_cut = 0.0;
};

/// Raised when the requested tolerance is not met; carries the estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  const QuadratureResult& achieved() const { return achieved_; }

 private:
  QuadratureResult achieved_;
};

/// Integral of t^(1-tau)(1 - e^-t) over [lo, hi], 0 <= lo < hi <= inf.
/// Independent numeric route to A for the identity check.
QuadratureResult gamma_identity_integral(double tau, double lo, double hi, const QuadratureSpec& q = {});

/// Order of c(k): n^(2-tau) ln n, n^(2-tau) ln(n/k^2) or n^(5-2tau) k^(2tau-6)
/// depending on the range. Throws std::domain_error for Range II input with
/// n <= k^2 and std::invalid_argument for k < 2 or n < 2.
double f_scale(std::int64_t k, std::int64_t n, const ModelParams& params);

/// Range limit constant times f_scale.
double ck_limit(std::int64_t k, std::int64_t n, const ModelParams& params);

/// Limit constants of the three ranges.
double range_one_constant(const ModelParams& p);
double range_two_constant(const ModelParams& p);
double range_three_constant(const ModelParams& p);

/// Predicted c(k)/n^(2-tau) at k = B sqrt(n):
/// C^2 mu^(2-2tau) B^-2 times the double integral over (0,inf)^2 of
/// (t1 t2)^-tau (1-e^(-B t1))(1-e^(-B t2))(1-e^(-mu t1 t2)).
/// Throws QuadratureError when the tolerance is not met.
QuadratureResult ck_crossover(double B, const ModelParams& params, const QuadratureSpec& q = {});

enum class TheoryMethod { range_limit, crossover };

struct TheoryPoint {
  std::int64_t k = 0;
  double predicted_c = 0.0;
  Range range = Range::I;
  TheoryMethod method = TheoryMethod::range_limit;
};

struct TheoryCurve {
  std::vector<TheoryPoint> points;
  ModelParams params;
  std::int64_t n = 0;
};

/// Range limits, with the crossover integral spliced in for
/// k in [sqrt(n)/4, 4 sqrt(n)]. Grid entries must lie in [2, n^(1/(tau-1))].
TheoryCurve theory_curve(std::int64_t n, const std::vector<std::int64_t>& k_grid, const ModelParams& params,
                         const QuadratureSpec& q = {});

}  // namespace ecm
