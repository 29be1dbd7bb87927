#include "ecm/ranges.hpp"

#include <cmath>

namespace ecm {

double range_two_start(double n, double tau, double a_II) {
  return a_II * std::pow(n, (tau - 2.0) / (tau - 1.0));
}

Range classify_range(double k, double n, double tau, double a_II) {
  if (k < range_two_start(n, tau, a_II)) return Range::I;
  // k * k <= n avoids rounding in sqrt for perfect squares.
  if (k * k <= n) return Range::II;
  return Range::III;
}

std::string_view to_string(Range r) {
  switch (r) {
    case Range::I:
      return "I";
    case Range::II:
      return "II";
    case Range::III:
      return "III";
  }
  return "?";
}

}  // namespace ecm
