#pragma once

#include <algorithm>
#include <vector>

#include "dagorder/graph.hpp"

namespace dagorder::testing {

inline bool same_labels(const BiPartition& a, const BiPartition& b) {
  return std::ranges::equal(a.labels(), b.labels());
}

inline std::vector<vertex_t> seq(const TopologicalOrder& ord) {
  return {ord.sequence().begin(), ord.sequence().end()};
}

} // namespace dagorder::testing
