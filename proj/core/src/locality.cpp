#include "dagorder/locality.hpp"

#include <algorithm>

#include "dagorder/errors.hpp"

namespace dagorder {

Distribution::Distribution(std::vector<std::int64_t> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  for (std::int64_t v : values_) sum_ += v;
  if (!values_.empty()) {
    max_ = values_.back();
    median_ = values_[(values_.size() - 1) / 2];
  }
}

namespace {

void require_valid_order(const DiGraph& g, const TopologicalOrder& ord, const char* who) {
  if (!validate_toporder(g, ord))
    throw validation_error(std::string(who) + ": not a valid topological order of the graph");
}

} // namespace

Distribution edge_length_distribution(const DiGraph& g, const TopologicalOrder& ord) {
  require_valid_order(g, ord, "edge_length_distribution");
  std::vector<std::int64_t> lengths;
  lengths.reserve(g.edges().size());
  for (const Edge& e : g.edges())
    lengths.push_back(static_cast<std::int64_t>(ord.position_of(e.v)) - ord.position_of(e.u));
  return Distribution(std::move(lengths));
}

std::vector<vertex_t> access_pattern(const DiGraph& g, const TopologicalOrder& ord) {
  require_valid_order(g, ord, "access_pattern");
  std::vector<vertex_t> pattern;
  pattern.reserve(static_cast<std::size_t>(g.num_vertices() + g.num_edges()));
  std::vector<vertex_t> sources;
  for (vertex_t v : ord.sequence()) {
    auto in = g.in_neighbors(v);
    sources.assign(in.begin(), in.end());
    std::sort(sources.begin(), sources.end(), [&](vertex_t a, vertex_t b) {
      return ord.position_of(a) < ord.position_of(b);
    });
    pattern.insert(pattern.end(), sources.begin(), sources.end());
    pattern.push_back(v);
  }
  return pattern;
}

namespace {

// Fenwick tree over pattern positions; a set bit marks the most recent
// occurrence of some value seen so far.
class BitTree {
public:
  explicit BitTree(std::size_t size) : tree_(size + 1, 0) {}

  void add(std::size_t pos, int delta) {
    for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  // Sum over positions [0, pos].
  std::int64_t prefix(std::size_t pos) const {
    std::int64_t s = 0;
    for (std::size_t i = pos + 1; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

private:
  std::vector<std::int64_t> tree_;
};

} // namespace

Distribution reuse_distance_distribution(std::span<const vertex_t> pattern) {
  std::vector<std::int64_t> distances;
  if (pattern.empty()) return Distribution(std::move(distances));

  vertex_t max_value = 0;
  for (vertex_t v : pattern) {
    if (v < 0) throw validation_error("reuse_distance_distribution: negative value in pattern");
    max_value = std::max(max_value, v);
  }

  std::vector<std::int64_t> last(static_cast<std::size_t>(max_value) + 1, -1);
  BitTree marked(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const vertex_t v = pattern[i];
    const std::int64_t prev = last[v];
    if (prev >= 0) {
      // distinct values strictly between the two occurrences: each has its
      // latest occurrence marked inside (prev, i)
      const std::int64_t upto_i = i > 0 ? marked.prefix(i - 1) : 0;
      const std::int64_t upto_prev = marked.prefix(static_cast<std::size_t>(prev));
      distances.push_back(upto_i - upto_prev);
      marked.add(static_cast<std::size_t>(prev), -1);
    }
    marked.add(i, +1);
    last[v] = static_cast<std::int64_t>(i);
  }
  return Distribution(std::move(distances));
}

Distribution edge_cut_distribution(const DiGraph& g, const TopologicalOrder& ord) {
  require_valid_order(g, ord, "edge_cut_distribution");
  const vertex_t n = g.num_vertices();
  std::vector<std::int64_t> cuts;
  if (n <= 1) return Distribution(std::move(cuts));

  std::vector<std::int64_t> diff(static_cast<std::size_t>(n), 0);
  for (const Edge& e : g.edges()) {
    ++diff[ord.position_of(e.u)];
    --diff[ord.position_of(e.v)];
  }
  cuts.resize(static_cast<std::size_t>(n) - 1);
  std::int64_t running = 0;
  for (vertex_t i = 0; i + 1 < n; ++i) {
    running += diff[i];
    cuts[i] = running;
  }
  return Distribution(std::move(cuts));
}

LocalitySummary locality_summary(const DiGraph& g, const TopologicalOrder& ord) {
  const Distribution lengths = edge_length_distribution(g, ord);
  const Distribution cuts = edge_cut_distribution(g, ord);
  const Distribution reuse = reuse_distance_distribution(access_pattern(g, ord));
  LocalitySummary s;
  s.bandwidth = lengths.max();
  s.mla = lengths.sum();
  s.cutwidth = cuts.max();
  s.median_edge_length = lengths.median();
  s.median_edge_cut = cuts.median();
  s.total_reuse = reuse.sum();
  s.max_reuse = reuse.max();
  s.median_reuse = reuse.median();
  return s;
}

} // namespace dagorder
