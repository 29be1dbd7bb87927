#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ecm/hidden_variable.hpp"
#include "ecm/multigraph.hpp"
#include "ecm/triangles.hpp"

using namespace ecm;

namespace {

HvmParams params(HvmKernel kernel, std::int64_t n) {
  HvmParams p;
  p.kernel = kernel;
  p.base = ModelParams::create(2.5, n);
  return p;
}

}  // namespace

TEST_CASE("kernels") {
  CHECK(hvm_kernel(HvmKernel::truncated_product, 0.0) == 0.0);
  CHECK(hvm_kernel(HvmKernel::exponential, 0.0) == 0.0);
  CHECK(hvm_kernel(HvmKernel::truncated_product, 1.0) == 1.0);
  CHECK(hvm_kernel(HvmKernel::truncated_product, 7.0) == 1.0);
  CHECK(hvm_kernel(HvmKernel::exponential, 1.0) == doctest::Approx(1 - std::exp(-1.0)));
  for (double x = 1e-8; x < 100; x *= 1.7) {
    const double e = hvm_kernel(HvmKernel::exponential, x);
    const double t = hvm_kernel(HvmKernel::truncated_product, x);
    CHECK(e <= t);
    CHECK((e >= 0 && e <= 1 && t >= 0 && t <= 1));
  }
}

TEST_CASE("degenerate pairs") {
  Stream s(1);
  const auto p = params(HvmKernel::truncated_product, 2);
  const double mun = p.base.mu * 2;
  // w1 w2 / (mu n) is 1e-300: never connected
  const std::vector<double> tiny = {1e-150, 1e-150 * mun};
  // w1 w2 >= mu n: always connected
  const std::vector<double> big = {std::sqrt(mun), std::sqrt(mun)};
  for (int i = 0; i < 200; ++i) {
    CHECK(generate_hvm(tiny, p, s).num_edges() == 0);
    CHECK(generate_hvm(big, p, s).num_edges() == 1);
  }
}

TEST_CASE("expected edge count on n = 500") {
  for (auto kernel : {HvmKernel::exponential, HvmKernel::truncated_product}) {
    const std::int64_t n = 500;
    const auto p = params(kernel, n);
    Stream ws(3);
    HvmParams fresh = p;
    fresh.weights_source = WeightSource::fresh_powerlaw;
    const auto w = hvm_weights(fresh, nullptr, ws);
    REQUIRE(w.size() == std::size_t(n));
    double expected = 0.0, variance = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        const double q = hvm_kernel(kernel, w[i] * w[j] / (p.base.mu * n));
        expected += q;
        variance += q * (1 - q);
      }
    const int replicas = 200;
    double total = 0.0;
    for (int r = 0; r < replicas; ++r) {
      Stream s = Stream::for_replica(9, r);
      const auto g = generate_hvm(w, p, s);
      total += double(g.num_edges());
      for (Vertex v = 0; v < g.num_vertices(); ++v)
        for (Vertex u : g.neighbors(v)) CHECK(u != v);
    }
    const double se = std::sqrt(variance / replicas);
    CHECK(std::abs(total / replicas - expected) < 3 * se);
  }
}

TEST_CASE("pair frequencies follow the kernel") {
  // Small graph: every pair's empirical frequency against its probability.
  const std::vector<double> w = {40, 25, 9, 9, 4, 2, 1, 1};
  const auto p = params(HvmKernel::exponential, std::int64_t(w.size()));
  const double mun = p.base.mu * double(w.size());
  const int runs = 20000;
  std::vector<std::vector<int>> hits(w.size(), std::vector<int>(w.size(), 0));
  Stream s(12);
  for (int r = 0; r < runs; ++r) {
    const auto g = generate_hvm(w, p, s);
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      for (Vertex u : g.neighbors(v)) ++hits[v][u];
  }
  int outliers = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      const double q = 1 - std::exp(-w[i] * w[j] / mun);
      const double se = std::sqrt(q * (1 - q) / runs);
      outliers += std::abs(hits[i][j] / double(runs) - q) > 4 * se + 1e-12;
    }
  CHECK(outliers == 0);
}

TEST_CASE("edge independence across disjoint pairs") {
  // w^2 / (mu n) = ln 2 for the first four: each pair is present with probability 1/2
  const double h = std::sqrt(std::log(2.0) * ModelParams::create(2.5, 10).mu * 10);
  const std::vector<double> w = {h, h, h, h, 1, 1, 1, 1, 1, 1};
  const auto p = params(HvmKernel::exponential, std::int64_t(w.size()));
  const int runs = 4000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  Stream s(77);
  for (int r = 0; r < runs; ++r) {
    const auto g = generate_hvm(w, p, s);
    const double x = g.has_edge(0, 1), y = g.has_edge(2, 3);
    sx += x, sy += y, sxx += x * x, syy += y * y, sxy += x * y;
  }
  const double cov = sxy / runs - (sx / runs) * (sy / runs);
  const double vx = sxx / runs - (sx / runs) * (sx / runs);
  const double vy = syy / runs - (sy / runs) * (sy / runs);
  REQUIRE(vx > 0);
  REQUIRE(vy > 0);
  CHECK(std::abs(cov / std::sqrt(vx * vy)) < 3 / std::sqrt(double(runs)));
}

TEST_CASE("weights from degrees and determinism") {
  const auto base = ModelParams::create(2.5, 3000, 4);
  Stream s(4);
  const auto degs = sample_degrees(base, s);
  HvmParams p;
  p.base = base;
  const auto w = hvm_weights(p, &degs, s);
  REQUIRE(w.size() == degs.size());
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == double(degs.degrees[i]));
  CHECK_THROWS(hvm_weights(p, nullptr, s));

  Stream a(10), b(10);
  const auto ga = generate_hvm(w, p, a);
  const auto gb = generate_hvm(w, p, b);
  REQUIRE(ga.num_edges() == gb.num_edges());
  for (Vertex v = 0; v < ga.num_vertices(); ++v) {
    const auto na = ga.neighbors(v), nb = gb.neighbors(v);
    CHECK(std::equal(na.begin(), na.end(), nb.begin(), nb.end()));
  }
}

TEST_CASE("compare_spectra") {
  ClusteringSpectrum a;
  a.n = 100;
  a.per_k[2] = {10, 5, 0.5, 10 * 0.3};
  a.per_k[10] = {4, 36, 0.2, 4 * 0.05};
  a.per_k[40] = {2, 0, 0.0, 0.0};
  const auto self = compare_spectra(a, a, 1.3);
  CHECK(self.omitted == 1);  // the zero bin at k = 40
  REQUIRE(self.rows.size() == 2);
  for (const auto& r : self.rows) CHECK(r.ratio == doctest::Approx(1.0));

  ClusteringSpectrum b = a;
  b.per_k[40] = {2, 10, 10.0 / (40 * 39), 0.0};
  b.per_k[500] = {1, 100, 200.0 / (500 * 499), 0.0};
  const auto cmp = compare_spectra(a, b, 1.3);
  CHECK(cmp.rows.size() == 2);
  CHECK(cmp.omitted == 2);

  ClusteringSpectrum half = a;
  half.per_k[10].c = 0.1;
  half.per_k[10].delta = 18;
  half.per_k[10].sum_local_sq = 4 * 0.0125;
  const auto h = compare_spectra(half, a, 1.3);
  REQUIRE(h.rows.size() == 2);
  CHECK(h.rows[1].ratio == doctest::Approx(0.5));
  CHECK(h.rows[1].std_err >= 0.0);
}
