#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ecm/degrees.hpp"
#include "ecm/params.hpp"
#include "ecm/ranges.hpp"
#include "ecm/simple_graph.hpp"

namespace ecm {

/// Contributing-degree window for focal degree k. Membership tests the
/// original sampled degrees of the two other triangle corners:
///   Range I:   D_u D_v in [eps, 1/eps] mu n
///   Range II:  as Range I, and D_u, D_v < mu n / (k eps)
///   Range III: D_u, D_v in [eps, 1/eps] mu n / k
struct RegimeWindow {
  std::int64_t k = 0;
  std::int64_t n = 0;
  double mu = 0.0;
  double epsilon = 0.1;
  Range range = Range::I;
  double a_II = 1.0;

  /// Throws std::invalid_argument unless 0 < epsilon < 1 and k >= 1.
  static RegimeWindow make(std::int64_t k, const ModelParams& params, double epsilon, double a_II = 1.0);
};

bool window_contains(const RegimeWindow& w, Degree d_u, Degree d_v);

struct TriangleDecomposition {
  std::uint64_t delta_k_total = 0;
  std::uint64_t delta_k_window = 0;
  std::optional<double> fraction;
};

/// Triangles at vertices of erased degree k, split by window membership of
/// the other two corners' original degrees.
TriangleDecomposition decompose_triangles(const SimpleGraph& g, const DegreeSequence& degs, std::int64_t k,
                                          const RegimeWindow& w);

/// One pass over all triangles for many windows; result i belongs to windows[i].
std::vector<TriangleDecomposition> decompose_triangles(const SimpleGraph& g, const DegreeSequence& degs,
                                                       std::span<const RegimeWindow> windows);

/// (1 - e^(-d_w d_u / l_n)) (1 - e^(-d_w d_v / l_n)) (1 - e^(-d_u d_v / l_n)).
double triangle_probability_estimate(Degree d_w, Degree d_u, Degree d_v, std::int64_t l_n);

/// Closed interval of original degrees.
struct DegreeRange {
  Degree lo = 1;
  Degree hi = 1;
  bool contains(Degree d) const { return d >= lo && d <= hi; }
  friend bool operator==(const DegreeRange&, const DegreeRange&) = default;
};

struct DegreeCell {
  DegreeRange u;
  DegreeRange v;
};

struct ConnectionRow {
  DegreeCell cell;
  std::uint64_t pairs = 0;
  std::uint64_t edges = 0;
  double empirical_p = 0.0;
  double model_p = 0.0;
  double std_err = 0.0;
};

struct ReplicaView {
  const SimpleGraph* graph = nullptr;
  const DegreeSequence* degrees = nullptr;
};

/// Pooled adjacency frequency per degree cell against 1 - e^(-d_u d_v / L_n)
/// at the cell mean degrees (per replica, pair-weighted across replicas).
/// Distinct ranges among the cells must be identical or disjoint.
/// Cells without any vertex pair are omitted.
std::vector<ConnectionRow> empirical_connection_probability(std::span<const ReplicaView> replicas,
                                                            std::span<const DegreeCell> cells);

/// Default cells: every pair (a <= b) of ranges from degree_ranges().
std::vector<DegreeCell> default_degree_cells(Degree max_degree, Degree exact_up_to = 8, double ratio = 1.25);

/// Exact degrees 1..exact_up_to, then geometric ranges of the given ratio.
std::vector<DegreeRange> degree_ranges(Degree max_degree, Degree exact_up_to = 8, double ratio = 1.25);

/// Exponent band of D_u = n^alpha contributing to triangles at k = n^beta.
/// For beta < 1/2 partners satisfy alpha + alpha' = 1; for beta >= 1/2 the
/// band is the point alpha = 1 - beta.
struct AlphaBand {
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  bool product_constraint = false;
  double alpha_sum = 1.0;
};

/// Throws std::invalid_argument unless 0 <= beta < 1/(tau-1) and 0 < epsilon < 1.
AlphaBand contributing_alpha_band(double beta, double tau, double epsilon);

}  // namespace ecm
