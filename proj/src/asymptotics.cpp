#include "ecm/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace ecm {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr unsigned kMaxDepth = 18;

void require_tau(double tau) {
  if (!(tau > 2.0 && tau < 3.0))
    throw std::invalid_argument("tau must lie strictly inside (2,3), got " + std::to_string(tau));
}

// log(1 - e^-x) for x > 0.
double log_one_minus_exp(double x) {
  if (x < 1e-8) return std::log(x) + std::log1p(-0.5 * x);
  if (x > 40.0) return -std::exp(-x);
  return std::log(-std::expm1(-x));
}

// Integrates f over consecutive breakpoints; accumulates the Kronrod error.
template <class F>
double integrate_pieces(const F& f, std::vector<double> cuts, double rel_tol, double& err) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double e = 0.0;
    total += Kronrod::integrate(f, cuts[i], cuts[i + 1], kMaxDepth, rel_tol, &e);
    err += e;
  }
  return total;
}

std::vector<double> clipped(std::initializer_list<double> points, double lo, double hi) {
  std::vector<double> out{lo, hi};
  for (double p : points)
    if (p > lo && p < hi) out.push_back(p);
  return out;
}

}  // namespace

double constant_A(double tau) {
  require_tau(tau);
  return boost::math::tgamma(3.0 - tau) / (tau - 2.0);
}

QuadratureResult gamma_identity_integral(double tau, double lo, double hi, const QuadratureSpec& q) {
  require_tau(tau);
  if (!(lo >= 0.0 && hi > lo)) throw std::invalid_argument("gamma_identity_integral: need 0 <= lo < hi");
  QuadratureResult r;
  // Tails: int_0^d t^(2-tau) dt and int_T^inf t^(1-tau) dt.
  const double tail_budget = q.abs_tol / 4.0;
  double lower = lo, upper = hi, tail = 0.0;
  if (lo == 0.0) {
    lower = std::pow(tail_budget * (3.0 - tau), 1.0 / (3.0 - tau));
    lower = std::max(lower, 1e-300);
    tail += std::pow(lower, 3.0 - tau) / (3.0 - tau);
  }
  if (std::isinf(hi)) {
    upper = q.truncation_bound > 0 ? q.truncation_bound : std::pow(tail_budget * (tau - 2.0), -1.0 / (tau - 2.0));
    upper = std::min(upper, 1e300);
    tail += std::pow(upper, 2.0 - tau) / (tau - 2.0);
  }
  r.lower_cut = lower;
  r.upper_cut = upper;
  // t = e^s: integrand becomes e^((2-tau)s)(1 - e^(-e^s)).
  auto f = [tau](double s) { return std::exp((2.0 - tau) * s + log_one_minus_exp(std::exp(s))); };
  double err = 0.0;
  const double a = std::log(lower), b = std::log(upper);
  r.value = integrate_pieces(f, clipped({-5.0, 0.0, 5.0}, a, b), q.rel_tol * 1e-2, err);
  r.abs_error = err + tail;
  if (r.abs_error > std::max(q.abs_tol, q.rel_tol * std::abs(r.value))) {
    std::ostringstream msg;
    msg << "gamma_identity_integral: tolerance not met, error estimate " << r.abs_error;
    throw QuadratureError(msg.str(), r);
  }
  return r;
}

double f_scale(std::int64_t k, std::int64_t n, const ModelParams& params) {
  if (k < 2 || n < 2) throw std::invalid_argument("f_scale: need k >= 2 and n >= 2");
  const double tau = params.tau;
  const double kk = static_cast<double>(k), nn = static_cast<double>(n);
  switch (classify_range(kk, nn, tau)) {
    case Range::I:
      return std::pow(nn, 2.0 - tau) * std::log(nn);
    case Range::II:
      if (nn <= kk * kk) throw std::domain_error("f_scale: Range II needs n > k^2");
      return std::pow(nn, 2.0 - tau) * std::log(nn / (kk * kk));
    case Range::III:
      return std::pow(nn, 5.0 - 2.0 * tau) * std::pow(kk, 2.0 * tau - 6.0);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double range_one_constant(const ModelParams& p) {
  return (3.0 - p.tau) / (p.tau - 1.0) * range_two_constant(p);
}

double range_two_constant(const ModelParams& p) {
  return std::pow(p.mu, -p.tau) * p.c_norm * p.c_norm * p.a_const;
}

double range_three_constant(const ModelParams& p) {
  return std::pow(p.mu, 3.0 - 2.0 * p.tau) * p.c_norm * p.c_norm * p.a_const * p.a_const;
}

double ck_limit(std::int64_t k, std::int64_t n, const ModelParams& params) {
  const double f = f_scale(k, n, params);
  switch (classify_range(static_cast<double>(k), static_cast<double>(n), params.tau)) {
    case Range::I:
      return range_one_constant(params) * f;
    case Range::II:
      return range_two_constant(params) * f;
    case Range::III:
      return range_three_constant(params) * f;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

// Bounds on the mass of the crossover integrand discarded beyond each cut,
// derived from 1 - e^-x <= min(1, x); each already covers both coordinates.
double upper_tail_bound(double T, double B, double mu, double tau) {
  const double K = 1.0 / (3.0 - tau) + 1.0 / (tau - 2.0);
  return 2.0 * (B * std::pow(mu, tau - 2.0) * K / T +
                std::pow(B, tau - 1.0) * std::pow(T, 1.0 - tau) / ((tau - 1.0) * (tau - 1.0)));
}

double lower_tail_bound(double d, double B, double mu, double tau) {
  const double K = 1.0 / (3.0 - tau) + 1.0 / (tau - 2.0);
  return 2.0 * (std::pow(B, tau - 1.0) * mu * K * std::pow(d, 3.0 - tau) / (3.0 - tau) +
                B * std::pow(mu, tau - 1.0) * d / (tau - 1.0));
}

}  // namespace

QuadratureResult ck_crossover(double B, const ModelParams& params, const QuadratureSpec& q) {
  if (!(B > 0.0) || !std::isfinite(B)) throw std::invalid_argument("ck_crossover: B must be positive");
  const double tau = params.tau, mu = params.mu;
  const double prefactor = params.c_norm * params.c_norm * std::pow(mu, 2.0 - 2.0 * tau) / (B * B);
  const double budget = q.abs_tol / 4.0 / prefactor;

  double T = q.truncation_bound > 0 ? q.truncation_bound : std::max({40.0 / B, 40.0, 40.0 / mu});
  if (q.truncation_bound <= 0)
    while (upper_tail_bound(T, B, mu, tau) > budget && T < 1e250) T *= 10.0;
  double d = std::min({1e-3, 1e-3 / B, 1e-3 / mu});
  while (lower_tail_bound(d, B, mu, tau) > budget && d > 1e-250) d /= 10.0;
  const double tail = upper_tail_bound(T, B, mu, tau) + lower_tail_bound(d, B, mu, tau);

  const double a = std::log(d), b = std::log(T);
  const double log_b = std::log(B), log_mu = std::log(mu);
  const double inner_tol = 1e-11;
  double worst_inner = 0.0;

  // t_i = e^(s_i); the Jacobian t1 t2 turns (t1 t2)^-tau into (t1 t2)^(1-tau).
  auto inner = [&](double s1) {
    const double l1 = log_one_minus_exp(std::exp(s1 + log_b));
    auto g = [&](double s2) {
      const double e = (1.0 - tau) * (s1 + s2) + l1 + log_one_minus_exp(std::exp(s2 + log_b)) +
                       log_one_minus_exp(std::exp(s1 + s2 + log_mu));
      return std::exp(e);
    };
    double err = 0.0;
    const double v = integrate_pieces(g, clipped({-log_b, -log_mu - s1}, a, b), inner_tol, err);
    if (v > 0.0) worst_inner = std::max(worst_inner, err / v);
    return v;
  };
  double outer_err = 0.0;
  const double integral = integrate_pieces(inner, clipped({-log_b, -log_mu, -log_b - log_mu}, a, b), 1e-10, outer_err);

  QuadratureResult r;
  r.value = prefactor * integral;
  r.abs_error = prefactor * (outer_err + worst_inner * integral + tail);
  r.lower_cut = d;
  r.upper_cut = T;
  if (!(r.abs_error <= std::max(q.abs_tol, q.rel_tol * std::abs(r.value)))) {
    std::ostringstream msg;
    msg << "ck_crossover(B=" << B << "): tolerance not met, error estimate " << r.abs_error;
    throw QuadratureError(msg.str(), r);
  }
  return r;
}

TheoryCurve theory_curve(std::int64_t n, const std::vector<std::int64_t>& k_grid, const ModelParams& params,
                         const QuadratureSpec& q) {
  TheoryCurve curve;
  curve.params = params;
  curve.n = n;
  const double nn = static_cast<double>(n);
  const double root = std::sqrt(nn);
  // relative slack so that exact powers (1e6^(2/3) = 1e4) survive rounding
  const double k_cap = std::pow(nn, 1.0 / (params.tau - 1.0)) * (1.0 + 1e-12);
  for (auto k : k_grid) {
    const double kk = static_cast<double>(k);
    if (k < 2 || kk > k_cap)
      throw std::invalid_argument("theory_curve: k=" + std::to_string(k) + " outside [2, n^(1/(tau-1))]");
    TheoryPoint pt;
    pt.k = k;
    pt.range = classify_range(kk, nn, params.tau);
    if (kk >= root / 4.0 && kk <= 4.0 * root) {
      pt.method = TheoryMethod::crossover;
      pt.predicted_c = ck_crossover(kk / root, params, q).value * std::pow(nn, 2.0 - params.tau);
    } else {
      pt.method = TheoryMethod::range_limit;
      pt.predicted_c = ck_limit(k, n, params);
    }
    curve.points.push_back(pt);
  }
  return curve;
}

}  // namespace ecm
