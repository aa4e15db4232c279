#pragma once

#include "dagorder/graph.hpp"
#include "dagorder/spectral.hpp"

namespace dagorder {

struct PartitionMetrics {
  double con = 0.0;   ///< conductance
  double rce = 0.0;   ///< cut edges relative to |E|
  double wi = 0.0;    ///< weight imbalance
  double rmce = 0.0;  ///< misaligned cut edges relative to the cut
};

/// Direction-incentivised spectral bi-partition: sign-split of the solver
/// vector, with parts swapped so the forward cut (S to T) is at least the
/// backward cut. Requires a weakly connected graph with n >= 2. The
/// incentive weight is taken from cfg.c (use default_direction_coefficient
/// for the shipped default of 1/(2|E|)).
BiPartition spectral_bipartition(const DiGraph& g, const SpectralConfig& cfg);

/// Fiedler-vector bi-partitioning: identical to spectral_bipartition with
/// the incentive weight forced to zero.
BiPartition classic_bipartition(const DiGraph& g, const SpectralConfig& cfg);

/// CON, RCE, WI and RMCE of a bi-partition. Requires |E| > 0. RMCE of an
/// empty cut is 0.
PartitionMetrics partition_metrics(const DiGraph& g, const BiPartition& p);

} // namespace dagorder
