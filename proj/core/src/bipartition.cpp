#include "dagorder/bipartition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "dagorder/errors.hpp"

namespace dagorder {

BiPartition spectral_bipartition(const DiGraph& g, const SpectralConfig& cfg) {
  const SolveResult sol = solve_fiedler(g, cfg);
  std::vector<std::uint8_t> in_t(g.num_vertices());
  for (vertex_t v = 0; v < g.num_vertices(); ++v) in_t[v] = sol.x[v] > 0.0 ? 0 : 1;
  BiPartition p(std::move(in_t));
  const auto [forward, backward] = directed_cut_sizes(g, p);
  if (forward < backward) p = p.flipped();
  return p;
}

BiPartition classic_bipartition(const DiGraph& g, const SpectralConfig& cfg) {
  SpectralConfig classic = cfg;
  classic.c = 0.0;
  return spectral_bipartition(g, classic);
}

PartitionMetrics partition_metrics(const DiGraph& g, const BiPartition& p) {
  if (p.num_vertices() != g.num_vertices())
    throw validation_error("partition_metrics: partition size mismatch");
  if (g.num_edges() == 0)
    throw validation_error("partition_metrics: empty edge set");

  std::int64_t e_uu = 0, e_ww = 0, e_uw = 0, e_wu = 0;
  for (const Edge& e : g.edges()) {
    const bool ut = p.in_t(e.u), vt = p.in_t(e.v);
    if (!ut && !vt) ++e_uu;
    else if (ut && vt) ++e_ww;
    else if (!ut) ++e_uw;
    else ++e_wu;
  }
  const std::int64_t cut = e_uw + e_wu;

  PartitionMetrics m;
  m.con = cut == 0 ? 0.0
                   : static_cast<double>(cut) /
                         static_cast<double>(cut + std::min(e_uu, e_ww));
  m.rce = static_cast<double>(cut) / static_cast<double>(g.num_edges());
  m.wi = static_cast<double>(std::llabs(p.s_size() - p.t_size())) /
         static_cast<double>(g.num_vertices());
  m.rmce = cut == 0 ? 0.0
                    : static_cast<double>(std::min(e_uw, e_wu)) / static_cast<double>(cut);
  return m;
}

} // namespace dagorder
