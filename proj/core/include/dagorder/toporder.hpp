#pragma once

#include <span>
#include <vector>

#include "dagorder/graph.hpp"
#include "dagorder/spectral.hpp"

namespace dagorder {

/// Ordered disjoint non-empty vertex sets L_1 < ... < L_k covering V, with
/// no edge from a later set to an earlier one.
struct VertexPrecedenceList {
  std::vector<std::vector<vertex_t>> sets;
  bool valid_for(const DiGraph& g) const;
};

struct DirectionFixResult {
  std::vector<vertex_t> s;  ///< in priority-topological order
  std::vector<vertex_t> t;  ///< in priority-topological order
};

/// Rebalances a bi-partition S|T of the middle set L of a precedence
/// partition K < L < M so that no edge runs from T' to S', preserving the
/// part cardinalities exactly. Priorities combine boundary pulls (edges into
/// M, edges from K) with cut-edge adjustments; the queue pops the minimal
/// (part, priority, id) ready vertex of the subgraph induced by L.
DirectionFixResult direction_fix(const DiGraph& g, std::span<const vertex_t> k_set,
                                 std::span<const vertex_t> l_set,
                                 std::span<const vertex_t> m_set,
                                 std::span<const vertex_t> s_set,
                                 std::span<const vertex_t> t_set);

struct SpectralOrderStats {
  std::int64_t refinements = 0;
  std::int64_t exhaustive_splits = 0;   ///< sets of size 2 or 3, solved exactly
  std::int64_t solver_fallbacks = 0;    ///< degenerate sign splits, priority split used
  std::int64_t nonconverged_solves = 0;
};

struct SpectralOrderResult {
  TopologicalOrder order;
  SpectralOrderStats stats;
};

/// Recursive spectral topological order: refine the precedence list by
/// restricted spectral splits followed by the direction fix until all sets
/// are singletons. Requires an acyclic graph. Solver trouble degrades to a
/// priority split of the affected set (counted in stats), never a failure.
SpectralOrderResult spectral_toporder(const DiGraph& g, const SpectralConfig& cfg);

/// Depth-first order over ready vertices (children explored ascending by id;
/// a vertex is emitted only once all its parents are placed).
TopologicalOrder dfs_order(const DiGraph& g);

/// Ready queue keyed by ascending out-degree, ties by id.
TopologicalOrder bfs_min_outdeg_order(const DiGraph& g);

/// Readiness-gated Cuthill-McKee: FIFO queue, newly ready children appended
/// in ascending total-degree order.
TopologicalOrder cuthill_mckee_acyclic(const DiGraph& g);

/// Readiness-gated Gorder: greedily picks the ready vertex with the highest
/// affinity (shared in-neighbours plus direct edges) to the last `window`
/// placed vertices; ties by id.
TopologicalOrder gorder_acyclic(const DiGraph& g, int window = 5);

} // namespace dagorder
