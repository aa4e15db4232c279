#pragma once

#include <span>

#include "dagorder/graph.hpp"

namespace dagorder {

struct AcyclicFixConfig {
  /// Minimum part-size fraction, in (0,1). The default matches a maximum
  /// weight imbalance of 0.8: the smaller part keeps at least 10% of V.
  double beta = 0.1;
  /// Extension (off by default): key the priority queue primarily on the
  /// raw spectral values instead of part membership. Requires the values
  /// to be passed to acyclic_fix.
  bool spectral_priority = false;
};

struct AcyclicFixDetails {
  BiPartition fixed;
  /// The priority-queue topological order the bisection was taken from.
  TopologicalOrder priority_order;
  /// Number of edges crossing the returned prefix split.
  std::int64_t split_cut = 0;
  /// Effective lower bounds on |S'| and |T'| (reals; s'_min/t'_min).
  double s_min_bound = 0.0;
  double t_min_bound = 0.0;
};

/// Repairs a bi-partition of a DAG into an acyclic one: builds a priority
/// topological order that prefers S-vertices and cut-edge-aware secondary
/// priorities, then returns the minimal-cut prefix bisection subject to the
/// part-size floors derived from beta. Requires an acyclic graph and
/// forward cut >= backward cut. Ties among equal-cut splits go to the most
/// balanced split, then to the smallest prefix.
AcyclicFixDetails acyclic_fix_details(const DiGraph& g, const BiPartition& p,
                                      const AcyclicFixConfig& cfg,
                                      std::span<const double> spectral_values = {});

BiPartition acyclic_fix(const DiGraph& g, const BiPartition& p, const AcyclicFixConfig& cfg,
                        std::span<const double> spectral_values = {});

/// Normalised preserved labels between the original bi-partition (oriented
/// forward-majority) and the repaired one: (|S cap U| + |T cap W|) / |V|.
double npl(const BiPartition& original, const BiPartition& fixed);

} // namespace dagorder
