#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dagorder/errors.hpp"
#include "dagorder/spectral.hpp"
#include "oracles.hpp"
#include "random_graphs.hpp"

using namespace dagorder;

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

} // namespace

TEST_CASE("quadratic form on a single edge") {
  const DiGraph g(2, {{0, 1}});
  const double inv = 1.0 / std::sqrt(2.0);
  const std::vector<double> x{inv, -inv};
  CHECK(quadratic_form(g, x, 0.0) == doctest::Approx(2.0));
  CHECK(quadratic_form(g, x, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  const std::vector<double> constant{0.7, 0.7};
  CHECK(quadratic_form(g, constant, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("apply_operator matches the defining identity") {
  const DiGraph g(2, {{0, 1}});
  const std::vector<double> x{1.0, -1.0};
  const auto y = apply_operator(g, x, 0.0);
  CHECK(y == std::vector<double>{4.0, -4.0});
  CHECK(dot(x, y) / 2.0 == doctest::Approx(quadratic_form(g, x, 0.0)));

  const std::vector<double> constant{2.0, 2.0};
  CHECK(apply_operator(g, constant, 0.3) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("apply_operator identity on random instances") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const DiGraph g = testing::random_digraph(30, 0.15, seed);
    const double c = g.num_edges() > 0 ? 0.5 / static_cast<double>(g.num_edges()) : 0.0;
    const auto x = testing::random_centered_unit(30, seed + 7);
    const auto y = apply_operator(g, x, c);
    const double q = quadratic_form(g, x, c);
    CHECK(dot(x, y) / 2.0 == doctest::Approx(q).epsilon(1e-10));
    CHECK(q == doctest::Approx(testing::direct_quadratic(g, x, c)).epsilon(1e-10));
  }
}

TEST_CASE("sandwich bounds and positive semidefiniteness") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const DiGraph g = testing::random_digraph(25, 0.2, seed);
    if (g.num_edges() == 0) continue;
    const double m = static_cast<double>(g.num_edges());
    for (double c : {0.0, 0.5 / m, 1.0 / m}) {
      for (int rep = 0; rep < 5; ++rep) {
        const auto x = testing::random_centered_unit(25, seed * 31 + rep);
        const double laplacian = quadratic_form(g, x, 0.0);
        const double q = quadratic_form(g, x, c);
        const double scale = std::max(1.0, laplacian);
        CHECK(q <= laplacian + 1e-9 * scale);
        CHECK(q >= (1.0 - c * m) * laplacian - 1e-9 * scale);
        CHECK(q >= -1e-9 * scale);
      }
    }
  }
}

TEST_CASE("kernel identifies weakly connected components") {
  const DiGraph g(5, {{0, 1}, {1, 2}, {3, 4}});
  const double c = 0.9 / static_cast<double>(g.num_edges());
  std::vector<double> x{2.0, 2.0, 2.0, -1.0, -1.0};  // constant per component
  CHECK(quadratic_form(g, x, c) == doctest::Approx(0.0));
  x[1] = 2.5;
  CHECK(quadratic_form(g, x, c) > 1e-3);
}

TEST_CASE("solve_fiedler on the path P3 (dense path)") {
  const DiGraph g(3, {{0, 1}, {1, 2}});
  SpectralConfig cfg;
  const SolveResult sol = solve_fiedler(g, cfg);
  CHECK(sol.converged);
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(norm(sol.x) == doctest::Approx(1.0));
  CHECK(std::abs(sol.x[1]) < 1e-8);
  CHECK(std::abs(sol.x[0]) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(sol.x[0] == doctest::Approx(-sol.x[2]));
}

TEST_CASE("iterative solver matches the dense oracle") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto n = static_cast<vertex_t>(10 + 5 * (seed % 5));
    const DiGraph g = testing::random_digraph(n, 0.15, seed, true);
    const double m = static_cast<double>(g.num_edges());
    for (double c : {0.0, 0.5 / m}) {
      SpectralConfig cfg;
      cfg.c = c;
      cfg.seed = seed;
      cfg.small_threshold = 0;  // force iterative
      const SolveResult sol = solve_fiedler(g, cfg);
      const auto oracle = testing::dense_min_quadratic(g, c);
      CHECK(std::abs(sol.value - oracle.min_value) <= 1e-6);
      CHECK(norm(sol.x) == doctest::Approx(1.0).epsilon(1e-9));
      double sum = 0.0;
      for (double v : sol.x) sum += v;
      CHECK(std::abs(sum) < 1e-8);
    }
  }
}

TEST_CASE("dense and iterative paths agree on the clique pair") {
  const DiGraph g = testing::clique_pair(5, 3, 42);
  SpectralConfig cfg;
  cfg.c = default_direction_coefficient(g.num_edges());
  cfg.seed = 3;
  const SolveResult dense = solve_fiedler(g, cfg);
  cfg.small_threshold = 0;
  const SolveResult iter = solve_fiedler(g, cfg);
  CHECK(iter.value == doctest::Approx(dense.value).epsilon(1e-6));
  // sign pattern separates the cliques
  for (int block = 0; block < 2; ++block) {
    for (vertex_t v = 1; v < 5; ++v) {
      const vertex_t base = block == 0 ? 0 : 5;
      CHECK((dense.x[base] > 0) == (dense.x[base + v] > 0));
    }
  }
  CHECK((dense.x[0] > 0) != (dense.x[5] > 0));
}

TEST_CASE("solve_fiedler validates its inputs") {
  CHECK_THROWS_AS(solve_fiedler(DiGraph(1, {}), SpectralConfig{}), validation_error);
  CHECK_THROWS_AS(solve_fiedler(DiGraph(4, {{0, 1}}), SpectralConfig{}), validation_error);
  const DiGraph g(2, {{0, 1}});
  SpectralConfig cfg;
  cfg.c = 2.0;  // above 1/|E|
  CHECK_THROWS_AS(solve_fiedler(g, cfg), validation_error);
}

TEST_CASE("solve_fiedler is deterministic per seed") {
  const DiGraph g = testing::random_digraph(80, 0.1, 5, true);
  SpectralConfig cfg;
  cfg.seed = 11;
  const SolveResult a = solve_fiedler(g, cfg);
  const SolveResult b = solve_fiedler(g, cfg);
  CHECK(a.x == b.x);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("solve_restricted with empty restriction equals solve_fiedler") {
  const DiGraph g = testing::random_digraph(20, 0.2, 9, true);
  SpectralConfig cfg;
  cfg.seed = 1;
  const SolveResult a = solve_fiedler(g, cfg);
  const SolveResult b = solve_restricted(g, cfg, Restriction{});
  CHECK(a.value == doctest::Approx(b.value));
  CHECK(std::abs(dot(a.x, b.x)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("solve_restricted on the anchored path") {
  const DiGraph g(4, {{0, 1}, {1, 2}, {2, 3}});
  SpectralConfig cfg;
  Restriction r;
  r.high = {0};
  r.low = {3};
  const SolveResult sol = solve_restricted(g, cfg, r);
  CHECK(sol.x[0] == 0.5);   // +1/sqrt(4), exactly
  CHECK(sol.x[3] == -0.5);
  CHECK(sol.x[1] > sol.x[2]);
  // by hand: the centered free block on the norm sphere is (+1/2, -1/2)
  CHECK(sol.x[1] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(sol.x[2] == doctest::Approx(-0.5).epsilon(1e-8));
}

TEST_CASE("restricted solves: dense and iterative paths agree") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const DiGraph g = testing::random_digraph(24, 0.2, seed, true);
    SpectralConfig cfg;
    cfg.c = default_direction_coefficient(g.num_edges());
    cfg.seed = seed;
    Restriction r;
    r.high = {0, 1, 2};
    r.low = {21, 22, 23};
    const SolveResult dense = solve_restricted(g, cfg, r);
    cfg.small_threshold = 0;
    const SolveResult iter = solve_restricted(g, cfg, r);
    CHECK(iter.value == doctest::Approx(dense.value).epsilon(1e-5));
    CHECK(iter.x[0] == 1.0 / std::sqrt(24.0));  // anchors are exact
  }
}

TEST_CASE("solve_restricted validates inputs") {
  const DiGraph g(4, {{0, 1}, {1, 2}, {2, 3}});
  SpectralConfig cfg;
  Restriction overlap;
  overlap.high = {0};
  overlap.low = {0};
  CHECK_THROWS_AS(solve_restricted(g, cfg, overlap), validation_error);
  Restriction too_few;
  too_few.high = {0, 1};
  too_few.low = {2};
  CHECK_THROWS_AS(solve_restricted(g, cfg, too_few), validation_error);
}

TEST_CASE("negating a solution leaves the objective unchanged") {
  const DiGraph g = testing::random_digraph(30, 0.15, 21, true);
  const double c = default_direction_coefficient(g.num_edges());
  SpectralConfig cfg;
  cfg.seed = 8;
  const SolveResult sol = solve_fiedler(g, cfg);
  std::vector<double> negated(sol.x.size());
  for (std::size_t i = 0; i < sol.x.size(); ++i) negated[i] = -sol.x[i];
  CHECK(quadratic_form(g, negated, c) == doctest::Approx(quadratic_form(g, sol.x, c)));
}
