#pragma once

#include <cstdint>
#include <string_view>

namespace ecm {

/// Scaling regimes of c(k): I below a n^((tau-2)/(tau-1)), II up to sqrt(n)
/// inclusive, III above sqrt(n).
enum class Range { I, II, III };

Range classify_range(double k, double n, double tau, double a_II = 1.0);

/// Lower edge of Range II, a n^((tau-2)/(tau-1)).
double range_two_start(double n, double tau, double a_II = 1.0);

std::string_view to_string(Range r);

}  // namespace ecm
