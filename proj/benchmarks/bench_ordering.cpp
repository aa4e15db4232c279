#include <benchmark/benchmark.h>

#include "dagorder/ingest.hpp"
#include "dagorder/toporder.hpp"
#include "mesh_fixture.hpp"

using namespace dagorder;

namespace {

const DiGraph& mesh_dag() {
  static const DiGraph g = acyclic_convert_toporder_rule(testing::barth_sized_pattern());
  return g;
}

void bm_spectral_toporder(benchmark::State& state) {
  const DiGraph& g = mesh_dag();
  SpectralConfig cfg;
  cfg.c = default_direction_coefficient(g.num_edges());
  cfg.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_toporder(g, cfg));
  }
}
BENCHMARK(bm_spectral_toporder)->Unit(benchmark::kMillisecond);

void bm_gorder(benchmark::State& state) {
  const DiGraph& g = mesh_dag();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gorder_acyclic(g, 5));
  }
}
BENCHMARK(bm_gorder)->Unit(benchmark::kMillisecond);

void bm_cuthill_mckee(benchmark::State& state) {
  const DiGraph& g = mesh_dag();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cuthill_mckee_acyclic(g));
  }
}
BENCHMARK(bm_cuthill_mckee)->Unit(benchmark::kMillisecond);

void bm_dfs(benchmark::State& state) {
  const DiGraph& g = mesh_dag();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dfs_order(g));
  }
}
BENCHMARK(bm_dfs)->Unit(benchmark::kMillisecond);

} // namespace
