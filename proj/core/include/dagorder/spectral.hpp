#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dagorder/graph.hpp"

namespace dagorder {

/// Parameters of the direction-incentivised quadratic-form minimization.
struct SpectralConfig {
  /// Direction-incentive weight; must lie in [0, 1/|E|]. The shipped
  /// pipelines use default_direction_coefficient() or 0.
  double c = 0.0;
  /// Relative residual tolerance of the iterative solver.
  double tol = 1e-8;
  int max_iter = 5000;
  /// Seed for the random start vector (and tie resolution on plateaus).
  std::uint64_t seed = 0;
  /// Free-block sizes below this use a dense eigensolver instead of the
  /// iterative engine.
  vertex_t small_threshold = 64;
};

/// 1/(2|E|), the default incentive weight; 0 for an empty edge set.
double default_direction_coefficient(std::int64_t num_edges);

/// Boundary values for the restricted solve: +1/sqrt(n) on `high`,
/// -1/sqrt(n) on `low`. The two sets must be disjoint.
struct Restriction {
  std::vector<vertex_t> high;
  std::vector<vertex_t> low;
};

struct SolveResult {
  std::vector<double> x;
  double value = 0.0;  ///< quadratic form at x
  int iterations = 0;
  bool converged = true;
};

/// Sum over edges of (x_u - x_v)^2, minus c times the square of the summed
/// differences; the second term is evaluated through the degree-difference
/// identity as c*(d^T x)^2.
double quadratic_form(const DiGraph& g, std::span<const double> x, double c);

/// Matrix-free matvec y = 2*(L - c*d d^T) x, so that x^T y = 2*quadratic_form.
/// One pass over the edges plus a rank-one correction.
std::vector<double> apply_operator(const DiGraph& g, std::span<const double> x, double c);

/// Minimizes quadratic_form over unit vectors orthogonal to the all-ones
/// vector. Requires a weakly connected graph with n >= 2. On iteration-limit
/// exhaustion the best iterate is returned with converged=false.
SolveResult solve_fiedler(const DiGraph& g, const SpectralConfig& cfg);

/// Same objective with entries pinned to +-1/sqrt(n) on the restriction sets.
/// The free block is centered and normalized to sqrt(|free|/n); with empty
/// restriction sets this is exactly solve_fiedler. Requires >= 2 free
/// vertices.
SolveResult solve_restricted(const DiGraph& g, const SpectralConfig& cfg, const Restriction& r);

} // namespace dagorder
