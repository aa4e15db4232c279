#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dagorder/errors.hpp"
#include "dagorder/locality.hpp"
#include "dagorder/rng.hpp"
#include "dagorder/toporder.hpp"
#include "oracles.hpp"
#include "random_graphs.hpp"

using namespace dagorder;

namespace {

std::vector<std::int64_t> to_vec(const Distribution& d) {
  return {d.values().begin(), d.values().end()};
}

const DiGraph kDiamond(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
const TopologicalOrder kIdentity4 = TopologicalOrder::from_sequence({0, 1, 2, 3});

} // namespace

TEST_CASE("distribution summaries") {
  const Distribution d({5, 1, 3, 2});
  CHECK(to_vec(d) == std::vector<std::int64_t>{1, 2, 3, 5});
  CHECK(d.sum() == 11);
  CHECK(d.max() == 5);
  CHECK(d.median() == 2);  // lower middle of even length
  const Distribution empty;
  CHECK(empty.sum() == 0);
  CHECK(empty.max() == 0);
  CHECK(empty.median() == 0);
}

TEST_CASE("edge lengths on path and diamond") {
  const DiGraph path(3, {{0, 1}, {1, 2}});
  const auto ord = TopologicalOrder::from_sequence({0, 1, 2});
  const Distribution d = edge_length_distribution(path, ord);
  CHECK(to_vec(d) == std::vector<std::int64_t>{1, 1});
  CHECK(d.max() == 1);
  CHECK(d.sum() == 2);

  const Distribution dd = edge_length_distribution(kDiamond, kIdentity4);
  CHECK(to_vec(dd) == std::vector<std::int64_t>{1, 1, 2, 2});
  CHECK(dd.max() == 2);
  CHECK(dd.sum() == 6);
}

TEST_CASE("edge length requires a valid order") {
  const DiGraph path(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(edge_length_distribution(path, TopologicalOrder::from_sequence({2, 1, 0})),
                  validation_error);
}

TEST_CASE("access pattern traces") {
  const DiGraph path(3, {{0, 1}, {1, 2}});
  CHECK(access_pattern(path, TopologicalOrder::from_sequence({0, 1, 2})) ==
        std::vector<vertex_t>{0, 0, 1, 1, 2});
  CHECK(access_pattern(kDiamond, kIdentity4) == std::vector<vertex_t>{0, 0, 1, 0, 2, 1, 2, 3});

  const DiGraph edgeless(3, {});
  CHECK(access_pattern(edgeless, TopologicalOrder::from_sequence({2, 0, 1})) ==
        std::vector<vertex_t>{2, 0, 1});
}

TEST_CASE("access pattern length is |V| + |E|") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DiGraph g = testing::random_dag(25, 0.2, seed);
    const auto ord = dfs_order(g);
    CHECK(static_cast<std::int64_t>(access_pattern(g, ord).size()) ==
          g.num_vertices() + g.num_edges());
  }
}

TEST_CASE("reuse distances on hand examples") {
  CHECK(to_vec(reuse_distance_distribution(std::vector<vertex_t>{0, 0, 1, 1, 2})) ==
        std::vector<std::int64_t>{0, 0});
  CHECK(to_vec(reuse_distance_distribution(std::vector<vertex_t>{0, 1, 0})) ==
        std::vector<std::int64_t>{1});
  CHECK(reuse_distance_distribution(std::vector<vertex_t>{0, 1, 2, 3}).size() == 0);
  CHECK(reuse_distance_distribution(std::vector<vertex_t>{}).size() == 0);
}

TEST_CASE("reuse distances equal the quadratic oracle") {
  const CounterRng rng{99};
  for (std::uint64_t rep = 0; rep < 25; ++rep) {
    const std::size_t len = 1 + rng.below(1, rep, 400);
    const std::uint64_t universe = 1 + rng.below(2, rep, 60);
    std::vector<vertex_t> pattern(len);
    for (std::size_t i = 0; i < len; ++i)
      pattern[i] = static_cast<vertex_t>(rng.below(3, rep * 1000 + i, universe));
    std::vector<std::int64_t> expected = testing::naive_reuse_distances(pattern);
    std::sort(expected.begin(), expected.end());
    CHECK(to_vec(reuse_distance_distribution(pattern)) == expected);
  }
}

TEST_CASE("edge cut distribution") {
  const DiGraph path(3, {{0, 1}, {1, 2}});
  const Distribution d = edge_cut_distribution(path, TopologicalOrder::from_sequence({0, 1, 2}));
  CHECK(to_vec(d) == std::vector<std::int64_t>{1, 1});
  CHECK(d.max() == 1);

  const Distribution dd = edge_cut_distribution(kDiamond, kIdentity4);
  CHECK(to_vec(dd) == std::vector<std::int64_t>{2, 2, 2});
  CHECK(dd.sum() == 6);

  const DiGraph edgeless(4, {});
  CHECK(to_vec(edge_cut_distribution(edgeless, kIdentity4)) ==
        std::vector<std::int64_t>{0, 0, 0});
}

TEST_CASE("sum of bisection cuts equals the summed edge lengths") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const DiGraph g = testing::random_dag(40, 0.15, seed);
    for (const TopologicalOrder& ord : {dfs_order(g), cuthill_mckee_acyclic(g)}) {
      const auto lengths = edge_length_distribution(g, ord);
      const auto cuts = edge_cut_distribution(g, ord);
      CHECK(lengths.sum() == cuts.sum());
      if (lengths.size() > 0) CHECK(lengths.values().front() >= 1);
    }
  }
}

TEST_CASE("locality summary bundles the eight scalars") {
  const LocalitySummary s = locality_summary(kDiamond, kIdentity4);
  CHECK(s.bandwidth == 2);
  CHECK(s.mla == 6);
  CHECK(s.cutwidth == 2);
  CHECK(s.median_edge_length == 1);
  CHECK(s.median_edge_cut == 2);
  // pattern [0,0,1,0,2,1,2,3] has reuse distances [0,1,2,1]
  CHECK(s.total_reuse == 4);
  CHECK(s.max_reuse == 2);
  CHECK(s.median_reuse == 1);
}
