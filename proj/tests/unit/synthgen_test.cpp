#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dagorder/bipartition.hpp"
#include "dagorder/errors.hpp"
#include "dagorder/ingest.hpp"
#include "dagorder/synthgen.hpp"

using namespace dagorder;

TEST_CASE("er with p = 0 is edgeless") {
  SynthConfig cfg;
  cfg.family = SynthFamily::ER;
  cfg.n = 50;
  cfg.p = 0.0;
  CHECK(generate(cfg).graph.num_edges() == 0);
}

TEST_CASE("alpha = 0 yields a perfectly aligned cut") {
  for (auto family : {SynthFamily::ER, SynthFamily::WS, SynthFamily::SBM}) {
    SynthConfig cfg;
    cfg.family = family;
    cfg.n = 60;
    cfg.k = 10;
    cfg.p = family == SynthFamily::WS ? 0.3 : 0.2;
    cfg.alpha = 0.0;
    cfg.seed = 5;
    const SynthResult r = generate(cfg);
    const auto [fwd, bwd] = directed_cut_sizes(r.graph, r.planted);
    CHECK(bwd == 0);
    if (fwd > 0) CHECK(partition_metrics(r.graph, r.planted).rmce == 0.0);
  }
}

TEST_CASE("planted partition is perfectly balanced") {
  SynthConfig cfg;
  cfg.family = SynthFamily::SBM;
  cfg.n = 100;
  cfg.seed = 2;
  const SynthResult r = generate(cfg);
  CHECK(r.planted.s_size() == r.planted.t_size());
  CHECK(partition_metrics(r.graph, r.planted).wi == 0.0);
}

TEST_CASE("ws ring degrees without rewiring") {
  SynthConfig cfg;
  cfg.family = SynthFamily::WS;
  cfg.n = 40;
  cfg.k = 6;
  cfg.p = 0.0;
  const SynthResult r = generate(cfg);
  CHECK(r.graph.num_edges() == 40 * 3);
  for (vertex_t v = 0; v < 40; ++v) CHECK(r.graph.degree(v) == 6);
}

TEST_CASE("sbm cross-edge count concentrates") {
  SynthConfig cfg;
  cfg.family = SynthFamily::SBM;
  cfg.n = 1000;
  cfg.p_int = 0.25;
  cfg.p_ext = 0.2;
  cfg.alpha = 0.05;
  cfg.seed = 31;
  const SynthResult r = generate(cfg);
  std::int64_t cross = 0;
  for (const Edge& e : r.graph.edges())
    if (r.planted.in_t(e.u) != r.planted.in_t(e.v)) ++cross;
  const double mean = 500.0 * 500.0 * 0.2;
  const double sigma = std::sqrt(500.0 * 500.0 * 0.2 * 0.8);
  CHECK(std::abs(static_cast<double>(cross) - mean) <= 3.0 * sigma);
}

TEST_CASE("misaligned fraction concentrates around alpha") {
  SynthConfig cfg;
  cfg.family = SynthFamily::ER;
  cfg.n = 400;
  cfg.p = 0.2;
  cfg.alpha = 0.08;
  cfg.seed = 9;
  const SynthResult r = generate(cfg);
  std::int64_t cross = 0, misaligned = 0;
  for (const Edge& e : r.graph.edges()) {
    if (r.planted.in_t(e.u) == r.planted.in_t(e.v)) continue;
    ++cross;
    if (r.planted.in_t(e.u)) ++misaligned;  // B -> A
  }
  REQUIRE(cross > 0);
  const double n_cross = static_cast<double>(cross);
  const double sigma = std::sqrt(n_cross * cfg.alpha * (1.0 - cfg.alpha));
  CHECK(std::abs(static_cast<double>(misaligned) - cfg.alpha * n_cross) <= 3.0 * sigma);
}

TEST_CASE("same seed gives byte-identical dumps") {
  for (auto family : {SynthFamily::ER, SynthFamily::WS, SynthFamily::SBM}) {
    SynthConfig cfg;
    cfg.family = family;
    cfg.n = 80;
    cfg.k = 8;
    cfg.seed = 1234;
    std::ostringstream a, b;
    write_edge_list(a, generate(cfg).graph);
    write_edge_list(b, generate(cfg).graph);
    CHECK(a.str() == b.str());
    cfg.seed = 1235;
    std::ostringstream c;
    write_edge_list(c, generate(cfg).graph);
    CHECK(a.str() != c.str());
  }
}

TEST_CASE("invalid configurations are rejected") {
  SynthConfig odd;
  odd.n = 31;
  CHECK_THROWS_AS(generate(odd), validation_error);

  SynthConfig bad_p;
  bad_p.p = 1.5;
  CHECK_THROWS_AS(generate(bad_p), validation_error);

  SynthConfig bad_ws;
  bad_ws.family = SynthFamily::WS;
  bad_ws.n = 20;
  bad_ws.k = 7;  // odd
  CHECK_THROWS_AS(generate(bad_ws), validation_error);

  bad_ws.k = 20;  // not < n
  CHECK_THROWS_AS(generate(bad_ws), validation_error);

  CHECK_THROWS_AS(synth_family_from_string("mesh"), validation_error);
  CHECK(synth_family_from_string("ws") == SynthFamily::WS);
}
