#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dagorder/errors.hpp"
#include "dagorder/ingest.hpp"
#include "mesh_fixture.hpp"
#include "random_graphs.hpp"

using namespace dagorder;

namespace {

SparsePattern parse(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_market(in);
}

} // namespace

TEST_CASE("matrix market general pattern") {
  const SparsePattern p = parse(
      "%%MatrixMarket matrix coordinate pattern general\n"
      "3 3 2\n"
      "1 2\n"
      "2 3\n");
  CHECK(p.rows == 3);
  CHECK(p.cols == 3);
  CHECK(p.entries == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK_FALSE(p.symmetric_header);
}

TEST_CASE("matrix market symmetric expansion") {
  const SparsePattern p = parse(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% comment line\n"
      "3 3 1\n"
      "2 1 4.5\n");
  CHECK(p.symmetric_header);
  CHECK(p.entries == std::vector<Edge>{{0, 1}, {1, 0}});
}

TEST_CASE("matrix market rejects bad input") {
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate pattern general\n3 3 1\n4 1\n"),
                  io_error);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix array real general\n3 3\n"), io_error);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate complex general\n1 1 0\n"), io_error);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real skew-symmetric\n1 1 0\n"),
                  io_error);
  CHECK_THROWS_AS(parse("not a header\n"), io_error);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n"),
                  io_error);
}

TEST_CASE("to_digraph counts symmetric edges") {
  SparsePattern p;
  p.rows = p.cols = 3;
  p.entries = {{0, 1}, {1, 0}, {1, 2}};
  const PatternGraph pg = to_digraph(p);
  CHECK(pg.graph.num_edges() == 3);
  CHECK(pg.symmetric_edge_percent == doctest::Approx(200.0 / 3.0));
}

TEST_CASE("to_digraph drops diagonal entries and rejects non-square patterns") {
  SparsePattern p;
  p.rows = p.cols = 3;
  p.entries = {{0, 0}, {2, 0}, {2, 1}};
  const PatternGraph pg = to_digraph(p);
  CHECK(pg.graph.num_edges() == 2);
  CHECK(pg.symmetric_edge_percent == 0.0);

  p.cols = 4;
  CHECK_THROWS_AS(to_digraph(p), validation_error);
}

TEST_CASE("partition conversion rule prefers the weakly connected part") {
  SparsePattern p;
  p.rows = p.cols = 3;
  p.entries = {{0, 1}, {1, 2}, {2, 0}};
  const DiGraph g = acyclic_convert_partition_rule(p);
  // A_U is connected, A_L leaves vertex 1 isolated.
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(is_acyclic(g));
}

TEST_CASE("partition conversion tie goes to the upper part") {
  SparsePattern p;
  p.rows = p.cols = 3;
  p.entries = {{0, 1}, {1, 0}, {1, 2}, {2, 1}};
  const DiGraph g = acyclic_convert_partition_rule(p);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
}

TEST_CASE("partition conversion falls back to the largest component") {
  SparsePattern p;
  p.rows = p.cols = 6;
  // Upper entries form two components {0,1,2} and {4,5}; lower has one edge.
  p.entries = {{0, 1}, {1, 2}, {4, 5}, {3, 0}};
  const DiGraph g = acyclic_convert_partition_rule(p);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(is_acyclic(g));
}

TEST_CASE("toporder conversion rule picks the denser part without screening") {
  SparsePattern p;
  p.rows = p.cols = 3;
  p.entries = {{0, 1}, {0, 2}, {1, 0}};
  const DiGraph g = acyclic_convert_toporder_rule(p);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(0, 2));

  SparsePattern tie;
  tie.rows = tie.cols = 2;
  tie.entries = {{0, 1}, {1, 0}};
  CHECK(acyclic_convert_toporder_rule(tie).has_edge(0, 1));
}

TEST_CASE("conversion rules always produce DAGs") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const DiGraph g = testing::random_digraph(25, 0.15, seed);
    SparsePattern p;
    p.rows = p.cols = 25;
    p.entries.assign(g.edges().begin(), g.edges().end());
    if (p.entries.empty()) continue;
    CHECK(is_acyclic(acyclic_convert_toporder_rule(p)));
    CHECK(is_acyclic(acyclic_convert_partition_rule(p)));
  }
}

TEST_CASE("matrix market round trip preserves the entry set") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DiGraph g = testing::random_digraph(20, 0.2, seed);
    SparsePattern p;
    p.rows = p.cols = 20;
    p.entries.assign(g.edges().begin(), g.edges().end());

    std::ostringstream out;
    write_matrix_market(out, p);
    const SparsePattern back = parse(out.str());
    CHECK(back.entries == p.entries);
  }
}

TEST_CASE("edge list dump round trip is bit-exact") {
  const DiGraph g = testing::random_dag(30, 0.2, 5);
  std::ostringstream first;
  write_edge_list(first, g);
  std::istringstream in(first.str());
  const DiGraph back = read_edge_list(in);
  std::ostringstream second;
  write_edge_list(second, back);
  CHECK(first.str() == second.str());
  CHECK(back.num_vertices() == g.num_vertices());
  CHECK(back.num_edges() == g.num_edges());
}

TEST_CASE("edge list reader rejects garbage") {
  std::istringstream no_header("0 1\n");
  CHECK_THROWS_AS(read_edge_list(no_header), io_error);
  std::istringstream bad_line("# n=2\n0 x\n");
  CHECK_THROWS_AS(read_edge_list(bad_line), io_error);
}

TEST_CASE("mesh fixture ingests as a lower-triangular DAG") {
  const SparsePattern p = testing::small_mesh_pattern();
  const PatternGraph pg = to_digraph(p);
  CHECK(pg.symmetric_edge_percent == 0.0);
  const DiGraph g = acyclic_convert_toporder_rule(p);
  CHECK(is_acyclic(g));
  CHECK(g.num_edges() == static_cast<std::int64_t>(p.entries.size()));
}
