#include "dagorder/acyclic.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <tuple>
#include <vector>

#include "dagorder/errors.hpp"

namespace dagorder {

namespace {

using QueueKey = std::tuple<double, std::int64_t, vertex_t>;

} // namespace

AcyclicFixDetails acyclic_fix_details(const DiGraph& g, const BiPartition& p,
                                      const AcyclicFixConfig& cfg,
                                      std::span<const double> spectral_values) {
  const vertex_t n = g.num_vertices();
  if (p.num_vertices() != n) throw validation_error("acyclic_fix: partition size mismatch");
  if (cfg.beta <= 0.0 || cfg.beta >= 1.0)
    throw validation_error("acyclic_fix: beta must lie in (0,1)");
  if (cfg.spectral_priority && static_cast<vertex_t>(spectral_values.size()) != n)
    throw validation_error("acyclic_fix: spectral priority requested without values");
  const auto [forward, backward] = directed_cut_sizes(g, p);
  if (forward < backward)
    throw validation_error("acyclic_fix: forward cut must be >= backward cut");

  std::vector<std::int64_t> prio(n, 0);
  for (const Edge& e : g.edges()) {
    const bool ut = p.in_t(e.u), vt = p.in_t(e.v);
    if (!ut && vt) {        // S -> T
      ++prio[e.u];
      --prio[e.v];
    } else if (ut && !vt) { // T -> S
      --prio[e.u];
      ++prio[e.v];
    }
  }

  auto key_of = [&](vertex_t v) -> QueueKey {
    const double primary =
        cfg.spectral_priority ? -spectral_values[v] : (p.in_t(v) ? 1.0 : 0.0);
    return {primary, prio[v], v};
  };

  std::priority_queue<QueueKey, std::vector<QueueKey>, std::greater<>> queue;
  std::vector<vertex_t> remaining_parents(n);
  for (vertex_t v = 0; v < n; ++v) {
    remaining_parents[v] = g.in_degree(v);
    if (remaining_parents[v] == 0) queue.push(key_of(v));
  }

  std::vector<vertex_t> top_ord;
  top_ord.reserve(n);
  while (!queue.empty()) {
    const vertex_t v = std::get<2>(queue.top());
    queue.pop();
    top_ord.push_back(v);
    for (vertex_t w : g.out_neighbors(v))
      if (--remaining_parents[w] == 0) queue.push(key_of(w));
  }
  if (static_cast<vertex_t>(top_ord.size()) != n)
    throw validation_error("acyclic_fix: input graph is cyclic");

  // Part-size floors: the longest S-prefix / T-suffix of the order, raised
  // to min(part size, beta*|V|).
  vertex_t s_min = 0;
  while (s_min < n && !p.in_t(top_ord[s_min])) ++s_min;
  vertex_t t_min = 0;
  while (t_min < n && p.in_t(top_ord[n - 1 - t_min])) ++t_min;
  const double beta_floor = cfg.beta * static_cast<double>(n);
  const double s_bound =
      std::max<double>(s_min, std::min<double>(static_cast<double>(p.s_size()), beta_floor));
  const double t_bound =
      std::max<double>(t_min, std::min<double>(static_cast<double>(p.t_size()), beta_floor));

  // cut(s) = edges crossing the prefix of length s, via a difference array.
  std::vector<vertex_t> pos(n);
  for (vertex_t i = 0; i < n; ++i) pos[top_ord[i]] = i;
  std::vector<std::int64_t> diff(static_cast<std::size_t>(n) + 2, 0);
  for (const Edge& e : g.edges()) {
    ++diff[pos[e.u] + 1];
    --diff[pos[e.v] + 1];
  }

  constexpr double kSlack = 1e-9;
  std::int64_t best_cut = -1;
  vertex_t best_s = -1;
  std::int64_t running = 0;
  for (vertex_t s = 0; s <= n; ++s) {
    running += diff[s];
    if (static_cast<double>(s) + kSlack < s_bound) continue;
    if (static_cast<double>(n - s) + kSlack < t_bound) continue;
    const std::int64_t cut = running;
    if (best_s == -1 || cut < best_cut ||
        (cut == best_cut && std::abs(2 * static_cast<std::int64_t>(s) - n) <
                                std::abs(2 * static_cast<std::int64_t>(best_s) - n))) {
      best_cut = cut;
      best_s = s;
    }
  }
  if (best_s == -1) throw validation_error("acyclic_fix: no admissible split point");

  std::vector<std::uint8_t> in_t(n, 1);
  for (vertex_t i = 0; i < best_s; ++i) in_t[top_ord[i]] = 0;

  AcyclicFixDetails out;
  out.fixed = BiPartition(std::move(in_t));
  out.priority_order = TopologicalOrder::from_sequence(std::move(top_ord));
  out.split_cut = best_cut;
  out.s_min_bound = s_bound;
  out.t_min_bound = t_bound;
  return out;
}

BiPartition acyclic_fix(const DiGraph& g, const BiPartition& p, const AcyclicFixConfig& cfg,
                        std::span<const double> spectral_values) {
  return acyclic_fix_details(g, p, cfg, spectral_values).fixed;
}

double npl(const BiPartition& original, const BiPartition& fixed) {
  if (original.num_vertices() != fixed.num_vertices())
    throw validation_error("npl: partition size mismatch");
  const vertex_t n = original.num_vertices();
  if (n == 0) return 1.0;
  std::int64_t preserved = 0;
  for (vertex_t v = 0; v < n; ++v)
    if (original.in_t(v) == fixed.in_t(v)) ++preserved;
  return static_cast<double>(preserved) / static_cast<double>(n);
}

} // namespace dagorder
