#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dagorder {

using vertex_t = std::int32_t;

struct Edge {
  vertex_t u{0};
  vertex_t v{0};
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple directed graph over dense vertex ids 0..n-1.
///
/// Construction collapses duplicate edges and drops self-loops (both
/// counted). Adjacency is stored in both directions, sorted ascending,
/// so dumps and iteration orders are canonical. All queries are pure;
/// a DiGraph may be shared freely across threads.
class DiGraph {
public:
  DiGraph() = default;

  /// Builds the graph from an arbitrary edge list. Throws
  /// validation_error if an endpoint is out of range or n < 0.
  DiGraph(vertex_t n, std::span<const Edge> edge_list);
  DiGraph(vertex_t n, std::initializer_list<Edge> edge_list)
      : DiGraph(n, std::span<const Edge>(edge_list.begin(), edge_list.size())) {}

  vertex_t num_vertices() const noexcept { return n_; }
  std::int64_t num_edges() const noexcept { return static_cast<std::int64_t>(edges_.size()); }

  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const vertex_t> out_neighbors(vertex_t u) const noexcept {
    return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const vertex_t> in_neighbors(vertex_t v) const noexcept {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }

  vertex_t out_degree(vertex_t u) const noexcept {
    return static_cast<vertex_t>(out_offsets_[u + 1] - out_offsets_[u]);
  }
  vertex_t in_degree(vertex_t v) const noexcept {
    return static_cast<vertex_t>(in_offsets_[v + 1] - in_offsets_[v]);
  }
  vertex_t degree(vertex_t v) const noexcept { return out_degree(v) + in_degree(v); }

  bool has_edge(vertex_t u, vertex_t v) const noexcept;

  std::int64_t dropped_duplicates() const noexcept { return dropped_duplicates_; }
  std::int64_t dropped_self_loops() const noexcept { return dropped_self_loops_; }

private:
  vertex_t n_{0};
  std::vector<Edge> edges_;                 // sorted (u, v), unique
  std::vector<std::int64_t> out_offsets_;   // size n+1
  std::vector<vertex_t> out_targets_;
  std::vector<std::int64_t> in_offsets_;    // size n+1
  std::vector<vertex_t> in_sources_;
  std::int64_t dropped_duplicates_{0};
  std::int64_t dropped_self_loops_{0};
};

/// Two-way vertex assignment. Side 0 is S, side 1 is T.
class BiPartition {
public:
  BiPartition() = default;
  explicit BiPartition(std::vector<std::uint8_t> in_t);

  vertex_t num_vertices() const noexcept { return static_cast<vertex_t>(in_t_.size()); }
  bool in_t(vertex_t v) const noexcept { return in_t_[v] != 0; }
  std::int64_t s_size() const noexcept { return s_size_; }
  std::int64_t t_size() const noexcept { return t_size_; }
  std::span<const std::uint8_t> labels() const noexcept { return in_t_; }

  /// Swaps the roles of S and T.
  BiPartition flipped() const;

private:
  std::vector<std::uint8_t> in_t_;
  std::int64_t s_size_{0};
  std::int64_t t_size_{0};
};

/// Bijection vertex <-> position. Construction validates bijectivity.
class TopologicalOrder {
public:
  TopologicalOrder() = default;

  /// From a sequence of vertices; position of sequence[i] is i.
  static TopologicalOrder from_sequence(std::vector<vertex_t> sequence);
  /// From a position vector; positions[v] is the rank of v.
  static TopologicalOrder from_positions(std::vector<vertex_t> positions);

  vertex_t num_vertices() const noexcept { return static_cast<vertex_t>(positions_.size()); }
  vertex_t position_of(vertex_t v) const noexcept { return positions_[v]; }
  vertex_t vertex_at(vertex_t pos) const noexcept { return sequence_[pos]; }
  std::span<const vertex_t> sequence() const noexcept { return sequence_; }
  std::span<const vertex_t> positions() const noexcept { return positions_; }

private:
  std::vector<vertex_t> positions_; // vertex -> position
  std::vector<vertex_t> sequence_;  // position -> vertex
};

/// Maximal groups of vertices mutually reachable when edge directions are
/// ignored. Components are ordered by smallest member; members ascend.
std::vector<std::vector<vertex_t>> weakly_connected_components(const DiGraph& g);

bool is_weakly_connected(const DiGraph& g);

bool is_acyclic(const DiGraph& g);

/// True iff ord is a bijection on g's vertices and every edge points from a
/// lower to a higher position.
bool validate_toporder(const DiGraph& g, const TopologicalOrder& ord);

/// d[v] = out_deg(v) - in_deg(v). Sums to zero on any graph.
std::vector<double> degree_difference_vector(const DiGraph& g);

/// Counts cut edges by direction: first = |(S x T) cap E|, second = |(T x S) cap E|.
std::pair<std::int64_t, std::int64_t> directed_cut_sizes(const DiGraph& g, const BiPartition& p);

} // namespace dagorder
