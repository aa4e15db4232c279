#include <benchmark/benchmark.h>

#include "dagorder/bipartition.hpp"
#include "dagorder/spectral.hpp"
#include "dagorder/synthgen.hpp"
#include "random_graphs.hpp"

using namespace dagorder;

namespace {

SynthResult sbm_instance(vertex_t n) {
  SynthConfig cfg;
  cfg.family = SynthFamily::SBM;
  cfg.n = n;
  cfg.alpha = 0.05;
  cfg.seed = 7;
  return generate(cfg);
}

void bm_apply_operator(benchmark::State& state) {
  const auto n = static_cast<vertex_t>(state.range(0));
  const DiGraph g = testing::random_digraph(n, 8.0 / n, 1, true);
  const auto x = testing::random_centered_unit(n, 2);
  const double c = default_direction_coefficient(g.num_edges());
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_operator(g, x, c));
  }
  state.SetItemsProcessed(state.iterations() * g.num_edges());
}
BENCHMARK(bm_apply_operator)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 16);

void bm_solve_fiedler_sbm(benchmark::State& state) {
  const SynthResult synth = sbm_instance(static_cast<vertex_t>(state.range(0)));
  SpectralConfig cfg;
  cfg.c = default_direction_coefficient(synth.graph.num_edges());
  cfg.small_threshold = 0;
  for (auto _ : state) {
    cfg.seed = static_cast<std::uint64_t>(state.iterations());
    benchmark::DoNotOptimize(solve_fiedler(synth.graph, cfg));
  }
}
BENCHMARK(bm_solve_fiedler_sbm)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void bm_spectral_bipartition_sbm(benchmark::State& state) {
  const SynthResult synth = sbm_instance(1024);
  SpectralConfig cfg;
  cfg.c = default_direction_coefficient(synth.graph.num_edges());
  cfg.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_bipartition(synth.graph, cfg));
  }
}
BENCHMARK(bm_spectral_bipartition_sbm)->Unit(benchmark::kMillisecond);

} // namespace
