#include "dagorder/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dagorder/errors.hpp"

namespace dagorder {

DiGraph::DiGraph(vertex_t n, std::span<const Edge> edge_list) : n_(n) {
  if (n < 0) throw validation_error("DiGraph: negative vertex count");
  edges_.reserve(edge_list.size());
  for (const Edge& e : edge_list) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw validation_error("DiGraph: edge endpoint out of range: (" + std::to_string(e.u) +
                             "," + std::to_string(e.v) + ") with n=" + std::to_string(n));
    if (e.u == e.v) {
      ++dropped_self_loops_;
      continue;
    }
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  auto last = std::unique(edges_.begin(), edges_.end());
  dropped_duplicates_ = edges_.end() - last;
  edges_.erase(last, edges_.end());

  out_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  in_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : edges_) {
    ++out_offsets_[e.u + 1];
    ++in_offsets_[e.v + 1];
  }
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());

  out_targets_.resize(edges_.size());
  in_sources_.resize(edges_.size());
  std::vector<std::int64_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::int64_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (const Edge& e : edges_) {
    out_targets_[out_fill[e.u]++] = e.v;
    in_sources_[in_fill[e.v]++] = e.u;
  }
  // edges_ is sorted by (u, v), so out_targets_ per vertex ascends already;
  // in_sources_ per vertex ascends because u ascends within fixed v fills.
}

bool DiGraph::has_edge(vertex_t u, vertex_t v) const noexcept {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
  auto nb = out_neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

BiPartition::BiPartition(std::vector<std::uint8_t> in_t) : in_t_(std::move(in_t)) {
  for (std::uint8_t side : in_t_) {
    if (side > 1) throw validation_error("BiPartition: label must be 0 (S) or 1 (T)");
    side ? ++t_size_ : ++s_size_;
  }
}

BiPartition BiPartition::flipped() const {
  std::vector<std::uint8_t> flipped(in_t_.size());
  for (std::size_t v = 0; v < in_t_.size(); ++v) flipped[v] = in_t_[v] ? 0 : 1;
  return BiPartition(std::move(flipped));
}

TopologicalOrder TopologicalOrder::from_sequence(std::vector<vertex_t> sequence) {
  const auto n = static_cast<vertex_t>(sequence.size());
  std::vector<vertex_t> positions(sequence.size(), -1);
  for (vertex_t pos = 0; pos < n; ++pos) {
    const vertex_t v = sequence[pos];
    if (v < 0 || v >= n || positions[v] != -1)
      throw validation_error("TopologicalOrder: sequence is not a permutation of 0..n-1");
    positions[v] = pos;
  }
  TopologicalOrder ord;
  ord.sequence_ = std::move(sequence);
  ord.positions_ = std::move(positions);
  return ord;
}

TopologicalOrder TopologicalOrder::from_positions(std::vector<vertex_t> positions) {
  const auto n = static_cast<vertex_t>(positions.size());
  std::vector<vertex_t> sequence(positions.size(), -1);
  for (vertex_t v = 0; v < n; ++v) {
    const vertex_t pos = positions[v];
    if (pos < 0 || pos >= n || sequence[pos] != -1)
      throw validation_error("TopologicalOrder: positions are not a permutation of 0..n-1");
    sequence[pos] = v;
  }
  TopologicalOrder ord;
  ord.sequence_ = std::move(sequence);
  ord.positions_ = std::move(positions);
  return ord;
}

std::vector<std::vector<vertex_t>> weakly_connected_components(const DiGraph& g) {
  const vertex_t n = g.num_vertices();
  std::vector<vertex_t> component(n, -1);
  std::vector<std::vector<vertex_t>> components;
  std::vector<vertex_t> stack;
  for (vertex_t start = 0; start < n; ++start) {
    if (component[start] != -1) continue;
    const auto id = static_cast<vertex_t>(components.size());
    components.emplace_back();
    component[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const vertex_t v = stack.back();
      stack.pop_back();
      components[id].push_back(v);
      for (vertex_t w : g.out_neighbors(v))
        if (component[w] == -1) component[w] = id, stack.push_back(w);
      for (vertex_t w : g.in_neighbors(v))
        if (component[w] == -1) component[w] = id, stack.push_back(w);
    }
    std::sort(components[id].begin(), components[id].end());
  }
  return components;
}

bool is_weakly_connected(const DiGraph& g) {
  return g.num_vertices() <= 1 || weakly_connected_components(g).size() == 1;
}

bool is_acyclic(const DiGraph& g) {
  const vertex_t n = g.num_vertices();
  std::vector<vertex_t> remaining_parents(n);
  std::vector<vertex_t> ready;
  for (vertex_t v = 0; v < n; ++v) {
    remaining_parents[v] = g.in_degree(v);
    if (remaining_parents[v] == 0) ready.push_back(v);
  }
  std::int64_t placed = 0;
  while (!ready.empty()) {
    const vertex_t v = ready.back();
    ready.pop_back();
    ++placed;
    for (vertex_t w : g.out_neighbors(v))
      if (--remaining_parents[w] == 0) ready.push_back(w);
  }
  return placed == n;
}

bool validate_toporder(const DiGraph& g, const TopologicalOrder& ord) {
  if (ord.num_vertices() != g.num_vertices()) return false;
  for (const Edge& e : g.edges())
    if (ord.position_of(e.u) >= ord.position_of(e.v)) return false;
  return true;
}

std::vector<double> degree_difference_vector(const DiGraph& g) {
  std::vector<double> d(g.num_vertices());
  for (vertex_t v = 0; v < g.num_vertices(); ++v)
    d[v] = static_cast<double>(g.out_degree(v)) - static_cast<double>(g.in_degree(v));
  return d;
}

std::pair<std::int64_t, std::int64_t> directed_cut_sizes(const DiGraph& g, const BiPartition& p) {
  if (p.num_vertices() != g.num_vertices())
    throw validation_error("directed_cut_sizes: partition size mismatch");
  std::int64_t forward = 0, backward = 0;
  for (const Edge& e : g.edges()) {
    if (!p.in_t(e.u) && p.in_t(e.v)) ++forward;
    else if (p.in_t(e.u) && !p.in_t(e.v)) ++backward;
  }
  return {forward, backward};
}

} // namespace dagorder
