#pragma once

// Shared machinery behind solve_fiedler / solve_restricted and the recursive
// ordering: a compact quadratic operator over a free vertex set and a
// sphere-constrained minimizer. Not installed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "dagorder/graph.hpp"
#include "dagorder/spectral.hpp"

namespace dagorder::detail {

// minimize z^T A z + 2 b^T z over { z : ||z|| = radius, z centered },
// where A = L_ff - c * d_f d_f^T in compact indexing over the free set.
// L_ff keeps the full-graph diagonal; edges to anchored vertices appear in
// the linear term b instead.
struct FreeProblem {
  std::vector<std::int64_t> adj_offsets;  // size nloc+1
  std::vector<vertex_t> adj;              // undirected multigraph within the free set
  std::vector<double> diag;               // full degree of each free vertex
  std::vector<double> dloc;               // degree-difference entries
  std::vector<double> b;                  // empty means zero
  double c = 0.0;
  double radius = 1.0;
  double norm_bound = 1.0;                // upper bound on ||A||, for tolerances

  vertex_t size() const noexcept { return static_cast<vertex_t>(diag.size()); }

  // out = (L_ff - c d d^T) z
  void apply(const double* z, double* out) const;
};

FreeProblem build_full_problem(const DiGraph& g, double c);

// region_of(v): 0 free, 1 anchored high (+1/sqrt(n)), 2 anchored low.
// d_high/d_low are the degree-difference sums over the two anchor sets.
template <class RegionFn>
FreeProblem build_restricted_problem(const DiGraph& g, double c,
                                     std::span<const vertex_t> free_vertices,
                                     RegionFn&& region_of, double d_high, double d_low);

struct EngineResult {
  std::vector<double> z;  // compact, centered, ||z|| = radius
  double objective = 0.0;
  int iterations = 0;
  bool converged = true;
};

EngineResult minimize_on_sphere(const FreeProblem& p, const SpectralConfig& cfg,
                                std::uint64_t seed);

// --- template definition ---

template <class RegionFn>
FreeProblem build_restricted_problem(const DiGraph& g, double c,
                                     std::span<const vertex_t> free_vertices,
                                     RegionFn&& region_of, double d_high, double d_low) {
  const auto nloc = static_cast<vertex_t>(free_vertices.size());
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(g.num_vertices()));

  std::vector<vertex_t> compact(g.num_vertices(), -1);
  for (vertex_t i = 0; i < nloc; ++i) compact[free_vertices[i]] = i;

  FreeProblem p;
  p.c = c;
  p.adj_offsets.assign(static_cast<std::size_t>(nloc) + 1, 0);
  p.diag.resize(nloc);
  p.dloc.resize(nloc);
  p.b.assign(nloc, 0.0);

  std::int64_t local_edges = 0;
  for (vertex_t i = 0; i < nloc; ++i) {
    const vertex_t v = free_vertices[i];
    for (vertex_t w : g.out_neighbors(v))
      if (region_of(w) == 0) ++local_edges;
    for (vertex_t w : g.in_neighbors(v))
      if (region_of(w) == 0) ++local_edges;
  }
  p.adj.reserve(local_edges);

  bool any_b = false;
  for (vertex_t i = 0; i < nloc; ++i) {
    const vertex_t v = free_vertices[i];
    double anchored_balance = 0.0;  // (#adjacent low) - (#adjacent high)
    for (vertex_t w : g.out_neighbors(v)) {
      switch (region_of(w)) {
        case 0: p.adj.push_back(compact[w]); break;
        case 1: anchored_balance -= 1.0; break;
        default: anchored_balance += 1.0; break;
      }
    }
    for (vertex_t w : g.in_neighbors(v)) {
      switch (region_of(w)) {
        case 0: p.adj.push_back(compact[w]); break;
        case 1: anchored_balance -= 1.0; break;
        default: anchored_balance += 1.0; break;
      }
    }
    p.adj_offsets[i + 1] = static_cast<std::int64_t>(p.adj.size());
    p.diag[i] = static_cast<double>(g.degree(v));
    p.dloc[i] = static_cast<double>(g.out_degree(v)) - static_cast<double>(g.in_degree(v));
    p.b[i] = inv_sqrt_n * (anchored_balance - c * p.dloc[i] * (d_high - d_low));
    if (p.b[i] != 0.0) any_b = true;
  }
  if (!any_b) p.b.clear();

  double max_diag = 0.0, d_sq = 0.0;
  for (vertex_t i = 0; i < nloc; ++i) {
    max_diag = std::max(max_diag, p.diag[i]);
    d_sq += p.dloc[i] * p.dloc[i];
  }
  p.norm_bound = 2.0 * max_diag + c * d_sq + 1.0;
  return p;
}

} // namespace dagorder::detail
