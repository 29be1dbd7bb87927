#include "ecm/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/zeta.hpp>

#include "ecm/asymptotics.hpp"

namespace ecm {

double zeta(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("zeta: s must exceed 1, got " + std::to_string(s));
  return boost::math::zeta(s);
}

ModelParams ModelParams::create(double tau, std::int64_t n, std::uint64_t seed) {
  if (!(tau > 2.0 && tau < 3.0))
    throw std::invalid_argument("tau must lie strictly inside (2,3), got " + std::to_string(tau));
  if (n < 1) throw std::invalid_argument("n must be positive, got " + std::to_string(n));
  ModelParams p;
  p.tau = tau;
  p.n = n;
  p.seed = seed;
  const double z = zeta(tau);
  p.c_norm = 1.0 / z;
  p.mu = zeta(tau - 1.0) / z;
  p.a_const = constant_A(tau);
  return p;
}

}  // namespace ecm
