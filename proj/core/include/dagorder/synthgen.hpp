#pragma once

#include <cstdint>
#include <string>

#include "dagorder/graph.hpp"

namespace dagorder {

enum class SynthFamily { ER, WS, SBM };

std::string to_string(SynthFamily family);
SynthFamily synth_family_from_string(const std::string& name);

/// Synthetic corpus configuration. The undirected skeleton comes from the
/// selected family; the planted halves are the first and second n/2 vertex
/// ids (for WS these are the two semicircles of the ring). Intra-part edges
/// are oriented uniformly at random; cross edges point B->A with probability
/// alpha and A->B otherwise.
struct SynthConfig {
  SynthFamily family = SynthFamily::ER;
  vertex_t n = 1000;      ///< even, >= 2
  double p = 0.2;         ///< ER edge probability / WS rewiring probability
  vertex_t k = 50;        ///< WS ring degree (even, < n)
  double p_int = 0.25;    ///< SBM intra-part probability
  double p_ext = 0.2;     ///< SBM cross-part probability
  double alpha = 0.05;    ///< alignment probability, in [0, 1]
  std::uint64_t seed = 0;
};

struct SynthResult {
  DiGraph graph;
  BiPartition planted;  ///< S = first half (A), T = second half (B)
};

/// Deterministic for a fixed config: draws are counter-indexed by canonical
/// pair keys, so the result is independent of platform and evaluation order.
SynthResult generate(const SynthConfig& cfg);

} // namespace dagorder
