#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dagorder/graph.hpp"

namespace dagorder {

/// Sorted multiset of non-negative integers with cached summaries. The
/// median is the lower middle element for even lengths; summaries of an
/// empty distribution are 0.
class Distribution {
public:
  Distribution() = default;
  explicit Distribution(std::vector<std::int64_t> values);

  std::span<const std::int64_t> values() const noexcept { return values_; }
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(values_.size()); }
  std::int64_t sum() const noexcept { return sum_; }
  std::int64_t max() const noexcept { return max_; }
  std::int64_t median() const noexcept { return median_; }

private:
  std::vector<std::int64_t> values_;
  std::int64_t sum_ = 0;
  std::int64_t max_ = 0;
  std::int64_t median_ = 0;
};

/// Multiset of edge lengths sigma(v) - sigma(u); all entries >= 1 under a
/// valid topological order. max = bandwidth, sum = linear arrangement.
Distribution edge_length_distribution(const DiGraph& g, const TopologicalOrder& ord);

/// For each vertex in order: its in-neighbours in ascending order position,
/// then the vertex itself. Length |V| + |E|.
std::vector<vertex_t> access_pattern(const DiGraph& g, const TopologicalOrder& ord);

/// For every repeated access, the number of distinct values strictly between
/// it and the previous access to the same value (LRU stack distances).
Distribution reuse_distance_distribution(std::span<const vertex_t> pattern);

/// beta(i) = number of edges (u,v) with sigma(u) <= i < sigma(v), for
/// i = 0..|V|-2. max = cut width; sum equals the summed edge lengths.
Distribution edge_cut_distribution(const DiGraph& g, const TopologicalOrder& ord);

struct LocalitySummary {
  std::int64_t bandwidth = 0;
  std::int64_t mla = 0;
  std::int64_t cutwidth = 0;
  std::int64_t median_edge_length = 0;
  std::int64_t median_edge_cut = 0;
  std::int64_t total_reuse = 0;
  std::int64_t max_reuse = 0;
  std::int64_t median_reuse = 0;
};

/// All eight scalar summaries of the three distributions for (g, ord).
LocalitySummary locality_summary(const DiGraph& g, const TopologicalOrder& ord);

} // namespace dagorder
