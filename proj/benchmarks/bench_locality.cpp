#include <benchmark/benchmark.h>

#include "dagorder/ingest.hpp"
#include "dagorder/locality.hpp"
#include "dagorder/rng.hpp"
#include "dagorder/toporder.hpp"
#include "mesh_fixture.hpp"

using namespace dagorder;

namespace {

void bm_reuse_distance(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  const CounterRng rng{5};
  std::vector<vertex_t> pattern(len);
  for (std::size_t i = 0; i < len; ++i)
    pattern[i] = static_cast<vertex_t>(rng.below(1, i, len / 8 + 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reuse_distance_distribution(pattern));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(len));
}
BENCHMARK(bm_reuse_distance)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 19);

void bm_locality_summary(benchmark::State& state) {
  const DiGraph g = acyclic_convert_toporder_rule(testing::barth_sized_pattern());
  const TopologicalOrder ord = cuthill_mckee_acyclic(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(locality_summary(g, ord));
  }
}
BENCHMARK(bm_locality_summary)->Unit(benchmark::kMillisecond);

} // namespace
