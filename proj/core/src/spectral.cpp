#include "dagorder/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "dagorder/errors.hpp"
#include "dagorder/rng.hpp"
#include "spectral_internal.hpp"

namespace dagorder {

double default_direction_coefficient(std::int64_t num_edges) {
  return num_edges > 0 ? 1.0 / (2.0 * static_cast<double>(num_edges)) : 0.0;
}

double quadratic_form(const DiGraph& g, std::span<const double> x, double c) {
  if (static_cast<vertex_t>(x.size()) != g.num_vertices())
    throw validation_error("quadratic_form: vector length != vertex count");
  double laplacian_part = 0.0;
  for (const Edge& e : g.edges()) {
    const double diff = x[e.u] - x[e.v];
    laplacian_part += diff * diff;
  }
  const std::vector<double> d = degree_difference_vector(g);
  double dtx = 0.0;
  for (std::size_t v = 0; v < x.size(); ++v) dtx += d[v] * x[v];
  return laplacian_part - c * dtx * dtx;
}

std::vector<double> apply_operator(const DiGraph& g, std::span<const double> x, double c) {
  if (static_cast<vertex_t>(x.size()) != g.num_vertices())
    throw validation_error("apply_operator: vector length != vertex count");
  std::vector<double> y(x.size(), 0.0);
  for (const Edge& e : g.edges()) {
    const double diff = x[e.u] - x[e.v];
    y[e.u] += 2.0 * diff;
    y[e.v] -= 2.0 * diff;
  }
  if (c != 0.0) {
    const std::vector<double> d = degree_difference_vector(g);
    double dtx = 0.0;
    for (std::size_t v = 0; v < x.size(); ++v) dtx += d[v] * x[v];
    const double scale = 2.0 * c * dtx;
    for (std::size_t v = 0; v < x.size(); ++v) y[v] -= scale * d[v];
  }
  return y;
}

namespace detail {

void FreeProblem::apply(const double* z, double* out) const {
  const vertex_t n = size();
  for (vertex_t i = 0; i < n; ++i) {
    double acc = diag[i] * z[i];
    for (std::int64_t k = adj_offsets[i]; k < adj_offsets[i + 1]; ++k) acc -= z[adj[k]];
    out[i] = acc;
  }
  if (c != 0.0) {
    double dtz = 0.0;
    for (vertex_t i = 0; i < n; ++i) dtz += dloc[i] * z[i];
    const double scale = c * dtz;
    for (vertex_t i = 0; i < n; ++i) out[i] -= scale * dloc[i];
  }
}

FreeProblem build_full_problem(const DiGraph& g, double c) {
  const vertex_t n = g.num_vertices();
  std::vector<vertex_t> all(n);
  for (vertex_t v = 0; v < n; ++v) all[v] = v;
  FreeProblem p = build_restricted_problem(
      g, c, all, [](vertex_t) { return 0; }, 0.0, 0.0);
  p.radius = 1.0;
  return p;
}

namespace {

void center(std::vector<double>& v) {
  if (v.empty()) return;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Exact minimizer of sum(lam_i y_i^2 + 2 c_i y_i) subject to ||y|| = r,
// in the eigenbasis of the (small) reduced operator. `align` resolves the
// free direction in the degenerate ("hard") case; it is the current iterate
// or a seeded vector expressed in the same basis.
Eigen::VectorXd trs_eigenbasis(const Eigen::VectorXd& lam, const Eigen::VectorXd& cvec,
                               double r, const Eigen::VectorXd& align) {
  const auto k = static_cast<int>(lam.size());
  Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
  if (k == 0 || r <= 0.0) return y;

  const double lam_min = lam.minCoeff();
  const double lam_scale = std::max({1.0, std::abs(lam_min), std::abs(lam.maxCoeff())});
  const double group_tol = 1e-10 * lam_scale;
  const double c_norm = cvec.norm();

  double c_group_sq = 0.0;
  for (int i = 0; i < k; ++i)
    if (lam[i] <= lam_min + group_tol) c_group_sq += cvec[i] * cvec[i];

  if (std::sqrt(c_group_sq) <= 1e-13 * std::max(c_norm, 1.0)) {
    // Hard case: the linear term has (numerically) no component on the
    // lowest eigenspace. Solve on the complement and spend the remaining
    // norm on the lowest eigenspace, oriented along `align`.
    double nrm_sq = 0.0;
    for (int i = 0; i < k; ++i) {
      if (lam[i] > lam_min + group_tol) {
        y[i] = -cvec[i] / (lam[i] - lam_min);
        nrm_sq += y[i] * y[i];
      }
    }
    if (nrm_sq <= r * r) {
      Eigen::VectorXd dir = Eigen::VectorXd::Zero(k);
      for (int i = 0; i < k; ++i)
        if (lam[i] <= lam_min + group_tol) dir[i] = align[i];
      double dn = dir.norm();
      if (dn <= 1e-300) {
        for (int i = 0; i < k; ++i)
          if (lam[i] <= lam_min + group_tol) { dir[i] = 1.0; break; }
        dn = 1.0;
      }
      y += dir * (std::sqrt(r * r - nrm_sq) / dn);
      return y;
    }
    // Otherwise a multiplier strictly above -lam_min exists; fall through.
  }

  // Secular equation: find mu > -lam_min with ||y(mu)|| = r,
  // y_i(mu) = -c_i / (lam_i + mu). phi(mu) = ||y(mu)||^2 is decreasing.
  auto y_norm = [&](double mu) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
      const double den = lam[i] + mu;
      const double yi = -cvec[i] / den;
      s += yi * yi;
    }
    return std::sqrt(s);
  };
  double lo = -lam_min;                       // exclusive: phi -> inf (or finite > r^2)
  double hi = -lam_min + c_norm / r + 1e-8 * lam_scale;
  while (y_norm(hi) > r) hi = lo + 2.0 * (hi - lo);
  double lo_in = lo + std::min(1e-14 * lam_scale, 0.25 * (hi - lo));
  for (int guard = 0; guard < 2000 && y_norm(lo_in) < r; ++guard)
    lo_in = lo + 0.5 * (lo_in - lo);

  double a = lo_in, bnd = hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + bnd);
    if (y_norm(mid) > r) a = mid; else bnd = mid;
    if (bnd - a <= 1e-15 * std::max(1.0, std::abs(bnd))) break;
  }
  const double mu = 0.5 * (a + bnd);
  for (int i = 0; i < k; ++i) y[i] = -cvec[i] / (lam[i] + mu);
  const double yn = y.norm();
  if (yn > 0) y *= r / yn;
  return y;
}

std::vector<double> seeded_start(vertex_t n, std::uint64_t seed) {
  CounterRng rng{seed};
  std::vector<double> z(n);
  for (vertex_t i = 0; i < n; ++i) z[i] = rng.symmetric(0, static_cast<std::uint64_t>(i));
  return z;
}

EngineResult solve_dense(const FreeProblem& p, std::uint64_t seed) {
  const vertex_t n = p.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (vertex_t i = 0; i < n; ++i) {
    a(i, i) = p.diag[i];
    for (std::int64_t k = p.adj_offsets[i]; k < p.adj_offsets[i + 1]; ++k) a(i, p.adj[k]) -= 1.0;
  }
  if (p.c != 0.0) {
    Eigen::Map<const Eigen::VectorXd> d(p.dloc.data(), n);
    a.noalias() -= p.c * d * d.transpose();
  }

  // Orthonormal basis of the centered subspace (Helmert construction).
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, n - 1);
  for (vertex_t col = 0; col < n - 1; ++col) {
    const double k = static_cast<double>(col) + 1.0;
    const double scale = 1.0 / std::sqrt(k * (k + 1.0));
    for (vertex_t row = 0; row <= col; ++row) basis(row, col) = scale;
    basis(col + 1, col) = -k * scale;
  }

  const Eigen::MatrixXd reduced = basis.transpose() * a * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced);
  const Eigen::VectorXd lam = eig.eigenvalues();
  const Eigen::MatrixXd vecs = eig.eigenvectors();

  Eigen::VectorXd b_red = Eigen::VectorXd::Zero(n - 1);
  if (!p.b.empty()) {
    Eigen::Map<const Eigen::VectorXd> b(p.b.data(), n);
    b_red = vecs.transpose() * (basis.transpose() * b);
  }

  const std::vector<double> w = seeded_start(n, CounterRng::derive(seed, 0x5eedu));
  Eigen::Map<const Eigen::VectorXd> wmap(w.data(), n);
  const Eigen::VectorXd align = vecs.transpose() * (basis.transpose() * wmap);

  const Eigen::VectorXd y = trs_eigenbasis(lam, b_red, p.radius, align);
  const Eigen::VectorXd z = basis * (vecs * y);

  EngineResult res;
  res.z.assign(z.data(), z.data() + n);
  center(res.z);
  const double zn = norm2(res.z);
  if (zn > 0)
    for (double& v : res.z) v *= p.radius / zn;
  std::vector<double> az(n);
  p.apply(res.z.data(), az.data());
  res.objective = dot(res.z, az);
  if (!p.b.empty()) {
    Eigen::Map<const Eigen::VectorXd> b(p.b.data(), n);
    res.objective += 2.0 * b.dot(Eigen::Map<const Eigen::VectorXd>(res.z.data(), n));
  }
  res.iterations = 0;
  res.converged = true;
  return res;
}

} // namespace

namespace {

// Locally optimal subspace descent from a given feasible start. When
// ignore_b is set the linear term is dropped (used to produce an
// eigen-direction warm start for the full problem).
EngineResult run_sphere_iteration(const FreeProblem& p, const SpectralConfig& cfg,
                                  std::vector<double> z, bool ignore_b) {
  const vertex_t n = p.size();
  std::vector<double> b = ignore_b ? std::vector<double>{} : p.b;
  center(b);
  const bool has_b = !b.empty();
  const double b_norm = has_b ? norm2(b) : 0.0;
  const double res_scale = p.norm_bound * p.radius + b_norm;

  std::vector<double> az(n), prev_dir;
  p.apply(z.data(), az.data());
  auto objective = [&](const std::vector<double>& zz, const std::vector<double>& azz) {
    double obj = dot(zz, azz);
    if (has_b) obj += 2.0 * dot(b, zz);
    return obj;
  };
  double obj = objective(z, az);

  EngineResult res;
  res.converged = false;
  int stall = 0;
  const double r2 = p.radius * p.radius;

  std::vector<std::vector<double>> basis;
  std::vector<std::vector<double>> a_basis;
  std::vector<double> tmp(n), av(n);

  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    // KKT residual: gradient component tangent to the sphere and the
    // centering hyperplane.
    std::vector<double> grad = az;
    if (has_b)
      for (vertex_t i = 0; i < n; ++i) grad[i] += b[i];
    center(grad);
    const double along = dot(grad, z) / r2;
    for (vertex_t i = 0; i < n; ++i) grad[i] -= along * z[i];
    const double residual = norm2(grad);
    if (residual <= cfg.tol * res_scale) {
      res.converged = true;
      break;
    }

    // Locally optimal subspace: current iterate, projected gradient,
    // previous step.
    basis.clear();
    a_basis.clear();
    auto push_direction = [&](std::vector<double> v, const std::vector<double>* av_known) {
      center(v);
      const double before = norm2(v);
      if (before <= 1e-300) return;
      for (const auto& u : basis) {
        const double proj = dot(v, u);
        for (vertex_t i = 0; i < n; ++i) v[i] -= proj * u[i];
      }
      const double after = norm2(v);
      if (after <= 1e-10 * std::max(before, 1e-30)) return;
      for (double& x : v) x /= after;
      if (av_known != nullptr && basis.empty()) {
        // First column is z/r; reuse az.
        a_basis.push_back(*av_known);
        for (double& x : a_basis.back()) x /= p.radius;
      } else {
        p.apply(v.data(), av.data());
        a_basis.push_back(av);
      }
      basis.push_back(std::move(v));
    };
    push_direction(z, &az);
    push_direction(grad, nullptr);
    if (!prev_dir.empty()) push_direction(prev_dir, nullptr);

    const auto k = static_cast<int>(basis.size());
    Eigen::MatrixXd reduced(k, k);
    Eigen::VectorXd b_red = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd z_red(k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double val = dot(basis[i], a_basis[j]);
        reduced(i, j) = val;
        reduced(j, i) = val;
      }
      if (has_b) b_red[i] = dot(basis[i], b);
      z_red[i] = dot(basis[i], z);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced);
    const Eigen::VectorXd y =
        trs_eigenbasis(eig.eigenvalues(), eig.eigenvectors().transpose() * b_red, p.radius,
                       eig.eigenvectors().transpose() * z_red);
    const Eigen::VectorXd coeff = eig.eigenvectors() * y;

    for (vertex_t i = 0; i < n; ++i) tmp[i] = 0.0;
    for (int j = 0; j < k; ++j) {
      const double cj = coeff[j];
      const auto& col = basis[j];
      for (vertex_t i = 0; i < n; ++i) tmp[i] += cj * col[i];
    }
    prev_dir.assign(n, 0.0);
    for (vertex_t i = 0; i < n; ++i) prev_dir[i] = tmp[i] - z[i];

    center(tmp);
    const double tn = norm2(tmp);
    if (tn <= 1e-300) break;
    for (vertex_t i = 0; i < n; ++i) z[i] = tmp[i] * (p.radius / tn);
    p.apply(z.data(), az.data());
    const double new_obj = objective(z, az);
    if (obj - new_obj <= 1e-14 * res_scale * p.radius) {
      if (++stall >= 25) { obj = std::min(obj, new_obj); break; }
    } else {
      stall = 0;
    }
    obj = new_obj;
  }

  res.z = std::move(z);
  res.objective = obj;
  res.iterations = it;
  return res;
}

std::vector<double> feasible_start(const FreeProblem& p, std::vector<double> z,
                                   std::uint64_t reseed) {
  center(z);
  double zn = norm2(z);
  for (int retry = 1; zn < 1e-12 && retry < 64; ++retry) {
    z = seeded_start(p.size(), CounterRng::derive(reseed, retry));
    center(z);
    zn = norm2(z);
  }
  for (double& v : z) v *= p.radius / zn;
  return z;
}

} // namespace

EngineResult minimize_on_sphere(const FreeProblem& p, const SpectralConfig& cfg,
                                std::uint64_t seed) {
  const vertex_t n = p.size();
  if (n < 2) throw validation_error("minimize_on_sphere: need at least two free vertices");

  if (n < cfg.small_threshold) return solve_dense(p, seed);

  const std::vector<double> random_start = feasible_start(p, seeded_start(n, seed), seed);
  EngineResult best = run_sphere_iteration(p, cfg, random_start, false);

  if (!p.b.empty()) {
    // The sphere problem with a linear term has at most one local
    // non-global minimum; restarting from the negated pull direction and
    // from an approximate lowest eigendirection covers the other basin.
    std::vector<double> pull(p.b.size());
    for (std::size_t i = 0; i < pull.size(); ++i) pull[i] = -p.b[i];
    EngineResult from_pull =
        run_sphere_iteration(p, cfg, feasible_start(p, std::move(pull), seed + 1), false);
    from_pull.iterations += best.iterations;
    if (from_pull.objective < best.objective) best = std::move(from_pull);

    SpectralConfig probe_cfg = cfg;
    probe_cfg.max_iter = std::min(cfg.max_iter, 150);
    const EngineResult eigen_probe = run_sphere_iteration(p, probe_cfg, random_start, true);
    for (int sign = 0; sign < 2; ++sign) {
      std::vector<double> start = eigen_probe.z;
      if (sign == 1)
        for (double& v : start) v = -v;
      EngineResult from_eigen =
          run_sphere_iteration(p, cfg, feasible_start(p, std::move(start), seed + 2), false);
      from_eigen.iterations += best.iterations;
      if (from_eigen.objective < best.objective) best = std::move(from_eigen);
    }
  }
  return best;
}

} // namespace detail

namespace {

void check_coefficient(const DiGraph& g, const SpectralConfig& cfg) {
  if (cfg.c < 0.0)
    throw validation_error("SpectralConfig: c must be non-negative");
  if (g.num_edges() > 0 && cfg.c > 1.0 / static_cast<double>(g.num_edges()) + 1e-15)
    throw validation_error("SpectralConfig: c exceeds 1/|E|");
  if (cfg.tol <= 0.0) throw validation_error("SpectralConfig: tol must be positive");
}

} // namespace

SolveResult solve_fiedler(const DiGraph& g, const SpectralConfig& cfg) {
  if (g.num_vertices() < 2) throw validation_error("solve_fiedler: need n >= 2");
  if (!is_weakly_connected(g))
    throw validation_error("solve_fiedler: graph must be weakly connected");
  check_coefficient(g, cfg);

  detail::FreeProblem p = detail::build_full_problem(g, cfg.c);
  detail::EngineResult er = detail::minimize_on_sphere(p, cfg, cfg.seed);

  SolveResult out;
  out.x = std::move(er.z);
  out.value = quadratic_form(g, out.x, cfg.c);
  out.iterations = er.iterations;
  out.converged = er.converged;
  return out;
}

SolveResult solve_restricted(const DiGraph& g, const SpectralConfig& cfg, const Restriction& r) {
  const vertex_t n = g.num_vertices();
  if (r.high.empty() && r.low.empty()) return solve_fiedler(g, cfg);
  check_coefficient(g, cfg);

  std::vector<std::uint8_t> region(n, 0);
  for (vertex_t v : r.high) {
    if (v < 0 || v >= n) throw validation_error("solve_restricted: vertex out of range");
    region[v] = 1;
  }
  for (vertex_t v : r.low) {
    if (v < 0 || v >= n) throw validation_error("solve_restricted: vertex out of range");
    if (region[v] != 0) throw validation_error("solve_restricted: restriction sets overlap");
    region[v] = 2;
  }

  std::vector<vertex_t> free_vertices;
  free_vertices.reserve(n);
  for (vertex_t v = 0; v < n; ++v)
    if (region[v] == 0) free_vertices.push_back(v);
  if (free_vertices.size() < 2)
    throw validation_error("solve_restricted: need at least two free vertices");

  const std::vector<double> d = degree_difference_vector(g);
  double d_high = 0.0, d_low = 0.0;
  for (vertex_t v : r.high) d_high += d[v];
  for (vertex_t v : r.low) d_low += d[v];

  detail::FreeProblem p = detail::build_restricted_problem(
      g, cfg.c, free_vertices, [&](vertex_t v) { return static_cast<int>(region[v]); }, d_high,
      d_low);
  p.radius = std::sqrt(static_cast<double>(free_vertices.size()) / static_cast<double>(n));

  detail::EngineResult er = detail::minimize_on_sphere(p, cfg, cfg.seed);

  SolveResult out;
  out.x.assign(n, 0.0);
  const double anchor = 1.0 / std::sqrt(static_cast<double>(n));
  for (vertex_t v = 0; v < n; ++v) {
    if (region[v] == 1) out.x[v] = anchor;
    else if (region[v] == 2) out.x[v] = -anchor;
  }
  for (std::size_t i = 0; i < free_vertices.size(); ++i) out.x[free_vertices[i]] = er.z[i];
  out.value = quadratic_form(g, out.x, cfg.c);
  out.iterations = er.iterations;
  out.converged = er.converged;
  return out;
}

} // namespace dagorder
