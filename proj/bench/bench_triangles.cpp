// Serial merge-intersection reference against the OpenMP degree-ordered kernel.
//
//   bench_triangles --benchmark_filter=n:100000

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "ecm/multigraph.hpp"
#include "ecm/simple_graph.hpp"
#include "ecm/triangles.hpp"

namespace {

const ecm::SimpleGraph& graph(std::int64_t n) {
  static std::map<std::int64_t, std::unique_ptr<ecm::SimpleGraph>> cache;
  auto& slot = cache[n];
  if (!slot) {
    const auto p = ecm::ModelParams::create(2.5, n, 1);
    ecm::Stream s(1);
    slot = std::make_unique<ecm::SimpleGraph>(ecm::erase(ecm::pair_half_edges(ecm::sample_degrees(p, s), s)));
  }
  return *slot;
}

void set_counters(benchmark::State& state, const ecm::SimpleGraph& g) {
  state.counters["edges"] = static_cast<double>(g.num_edges());
  state.counters["edges/s"] =
      benchmark::Counter(static_cast<double>(g.num_edges()), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_serial(benchmark::State& state) {
  const auto& g = graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ecm::triangles_per_vertex_serial(g));
  set_counters(state, g);
}

void BM_parallel(benchmark::State& state) {
  const auto& g = graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ecm::triangles_per_vertex(g));
  set_counters(state, g);
}

void BM_edge_perspective(benchmark::State& state) {
  const auto p = ecm::ModelParams::create(2.5, state.range(0), 1);
  ecm::Stream s(1);
  const auto mg = ecm::pair_half_edges(ecm::sample_degrees(p, s), s);
  for (auto _ : state) benchmark::DoNotOptimize(ecm::count_triangles_edge_perspective(mg));
}

}  // namespace

BENCHMARK(BM_serial)->ArgName("n")->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel)->ArgName("n")->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_edge_perspective)->ArgName("n")->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
