#include "dagorder/toporder.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <queue>
#include <tuple>

#include "dagorder/errors.hpp"
#include "dagorder/rng.hpp"
#include "spectral_internal.hpp"

namespace dagorder {

bool VertexPrecedenceList::valid_for(const DiGraph& g) const {
  const vertex_t n = g.num_vertices();
  std::vector<std::int32_t> rank(n, -1);
  std::int64_t covered = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) return false;
    for (vertex_t v : sets[i]) {
      if (v < 0 || v >= n || rank[v] != -1) return false;
      rank[v] = static_cast<std::int32_t>(i);
      ++covered;
    }
  }
  if (covered != n) return false;
  for (const Edge& e : g.edges())
    if (rank[e.u] > rank[e.v]) return false;
  return true;
}

namespace {

// Reusable global-size scratch; subproblems only touch their own vertices,
// and every read of a touched entry is preceded by a write in the same
// subproblem, so no clearing between uses is needed.
struct OrderWorkspace {
  std::vector<std::int64_t> major;
  std::vector<std::int64_t> minor;
  std::vector<vertex_t> remaining;
  std::vector<std::uint8_t> in_l;
  std::vector<std::uint8_t> side;
  std::vector<vertex_t> compact;

  explicit OrderWorkspace(vertex_t n)
      : major(n, 0), minor(n, 0), remaining(n, 0), in_l(n, 0), side(n, 0), compact(n, -1) {}
};

// Kahn's algorithm on the subgraph induced by l_set, popping the minimal
// (major, minor, id) ready vertex. Expects ws.in_l/major/minor prepared.
std::vector<vertex_t> subset_priority_topo(const DiGraph& g, std::span<const vertex_t> l_set,
                                           OrderWorkspace& ws) {
  using Key = std::tuple<std::int64_t, std::int64_t, vertex_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;

  for (vertex_t v : l_set) {
    vertex_t parents = 0;
    for (vertex_t u : g.in_neighbors(v))
      if (ws.in_l[u]) ++parents;
    ws.remaining[v] = parents;
    if (parents == 0) queue.push({ws.major[v], ws.minor[v], v});
  }

  std::vector<vertex_t> order;
  order.reserve(l_set.size());
  while (!queue.empty()) {
    const vertex_t v = std::get<2>(queue.top());
    queue.pop();
    order.push_back(v);
    for (vertex_t w : g.out_neighbors(v))
      if (ws.in_l[w] && --ws.remaining[w] == 0) queue.push({ws.major[w], ws.minor[w], w});
  }
  if (order.size() != l_set.size())
    throw validation_error("priority topological order: induced subgraph is cyclic");
  return order;
}

// Alg-3 style priorities on ws.minor: boundary pulls from region_of
// (1 = before L, 2 = after L) plus +-1 cut adjustments from ws.side.
template <class RegionFn>
void fill_direction_fix_priorities(const DiGraph& g, std::span<const vertex_t> l_set,
                                   RegionFn&& region_of, OrderWorkspace& ws) {
  for (vertex_t v : l_set) {
    std::int64_t prio = 0;
    for (vertex_t w : g.out_neighbors(v))
      if (region_of(w) == 2) ++prio;
    for (vertex_t u : g.in_neighbors(v))
      if (region_of(u) == 1) --prio;
    ws.minor[v] = prio;
    ws.major[v] = ws.side[v];
  }
  for (vertex_t v : l_set) {
    for (vertex_t w : g.out_neighbors(v)) {
      if (!ws.in_l[w]) continue;
      if (ws.side[v] == 0 && ws.side[w] == 1) {
        ++ws.minor[v];
        --ws.minor[w];
      } else if (ws.side[v] == 1 && ws.side[w] == 0) {
        --ws.minor[v];
        ++ws.minor[w];
      }
    }
  }
}

template <class RegionFn>
DirectionFixResult direction_fix_impl(const DiGraph& g, std::span<const vertex_t> l_set,
                                      RegionFn&& region_of, std::size_t s_size,
                                      OrderWorkspace& ws) {
  fill_direction_fix_priorities(g, l_set, region_of, ws);
  std::vector<vertex_t> order = subset_priority_topo(g, l_set, ws);
  DirectionFixResult out;
  out.s.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s_size));
  out.t.assign(order.begin() + static_cast<std::ptrdiff_t>(s_size), order.end());
  return out;
}

} // namespace

DirectionFixResult direction_fix(const DiGraph& g, std::span<const vertex_t> k_set,
                                 std::span<const vertex_t> l_set,
                                 std::span<const vertex_t> m_set,
                                 std::span<const vertex_t> s_set,
                                 std::span<const vertex_t> t_set) {
  const vertex_t n = g.num_vertices();
  std::vector<std::uint8_t> region(n, 0xff);
  auto mark = [&](std::span<const vertex_t> set, std::uint8_t code) {
    for (vertex_t v : set) {
      if (v < 0 || v >= n || region[v] != 0xff)
        throw validation_error("direction_fix: K, L, M must partition the vertices");
      region[v] = code;
    }
  };
  mark(l_set, 0);
  mark(k_set, 1);
  mark(m_set, 2);
  for (vertex_t v = 0; v < n; ++v)
    if (region[v] == 0xff)
      throw validation_error("direction_fix: K, L, M must partition the vertices");
  // precedence order is K(1) < L(0) < M(2); map region codes to ranks
  auto rank_of = [&](vertex_t v) { return region[v] == 1 ? 0 : region[v] == 0 ? 1 : 2; };
  for (const Edge& e : g.edges())
    if (rank_of(e.u) > rank_of(e.v))
      throw validation_error("direction_fix: precedence K < L < M violated by an edge");

  OrderWorkspace ws(n);
  for (vertex_t v : l_set) ws.in_l[v] = 1;
  std::vector<std::uint8_t> seen(n, 0);
  for (vertex_t v : s_set) {
    if (v < 0 || v >= n || !ws.in_l[v] || seen[v])
      throw validation_error("direction_fix: S must be a subset of L");
    seen[v] = 1;
    ws.side[v] = 0;
  }
  for (vertex_t v : t_set) {
    if (v < 0 || v >= n || !ws.in_l[v] || seen[v])
      throw validation_error("direction_fix: T must be the complement of S in L");
    seen[v] = 1;
    ws.side[v] = 1;
  }
  if (s_set.size() + t_set.size() != l_set.size())
    throw validation_error("direction_fix: S and T must partition L");

  return direction_fix_impl(
      g, l_set, [&](vertex_t v) { return static_cast<int>(region[v]); }, s_set.size(), ws);
}

namespace {

struct RefineTask {
  vertex_t lo;
  vertex_t hi;
  std::uint64_t seed;
  double d_before;
  double d_after;
};

// Weakly connected components of the induced subgraph, ranked by smallest
// member; used when a spectral split degenerates.
void fill_component_ranks(const DiGraph& g, std::span<const vertex_t> l_set,
                          OrderWorkspace& ws) {
  for (vertex_t v : l_set) ws.compact[v] = -1;
  std::vector<vertex_t> stack;
  for (vertex_t v : l_set) {
    if (ws.compact[v] != -1) continue;
    ws.compact[v] = v;
    stack.push_back(v);
    while (!stack.empty()) {
      const vertex_t u = stack.back();
      stack.pop_back();
      ws.major[u] = v;
      for (vertex_t w : g.out_neighbors(u))
        if (ws.in_l[w] && ws.compact[w] == -1) ws.compact[w] = v, stack.push_back(w);
      for (vertex_t w : g.in_neighbors(u))
        if (ws.in_l[w] && ws.compact[w] == -1) ws.compact[w] = v, stack.push_back(w);
    }
  }
}

} // namespace

SpectralOrderResult spectral_toporder(const DiGraph& g, const SpectralConfig& cfg) {
  const vertex_t n = g.num_vertices();
  if (!is_acyclic(g)) throw validation_error("spectral_toporder: input graph is cyclic");

  SpectralOrderResult result;
  if (n == 0) {
    result.order = TopologicalOrder::from_sequence({});
    return result;
  }

  std::vector<vertex_t> arrangement(n), pos(n);
  for (vertex_t v = 0; v < n; ++v) arrangement[v] = v, pos[v] = v;
  const std::vector<double> dvec = degree_difference_vector(g);
  OrderWorkspace ws(n);
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  std::vector<RefineTask> tasks;
  tasks.push_back({0, n, cfg.seed, 0.0, 0.0});

  while (!tasks.empty()) {
    const RefineTask task = tasks.back();
    tasks.pop_back();
    const vertex_t len = task.hi - task.lo;
    if (len <= 1) continue;
    ++result.stats.refinements;

    std::vector<vertex_t> l_set(arrangement.begin() + task.lo, arrangement.begin() + task.hi);
    std::sort(l_set.begin(), l_set.end());
    for (vertex_t v : l_set) ws.in_l[v] = 1;
    auto region_of = [&](vertex_t v) {
      return pos[v] < task.lo ? 1 : pos[v] >= task.hi ? 2 : 0;
    };

    std::vector<vertex_t> s_list, t_list;

    if (len <= 3) {
      ++result.stats.exhaustive_splits;
      detail::FreeProblem problem = detail::build_restricted_problem(
          g, cfg.c, l_set, region_of, task.d_before, task.d_after);
      problem.radius = std::sqrt(static_cast<double>(len)) / sqrt_n;

      std::vector<std::pair<int, int>> local_edges;
      for (int i = 0; i < len; ++i) ws.compact[l_set[i]] = i;
      for (int i = 0; i < len; ++i)
        for (vertex_t w : g.out_neighbors(l_set[i]))
          if (ws.in_l[w]) local_edges.emplace_back(i, ws.compact[w]);

      double best_obj = 0.0;
      int best_mask = -1;
      std::array<double, 3> z{};
      std::array<double, 3> az{};
      for (int mask = 1; mask < (1 << len) - 1; ++mask) {
        bool admissible = true;
        for (const auto& [a, b] : local_edges)
          if (!(mask >> a & 1) && (mask >> b & 1)) {  // T -> S edge
            admissible = false;
            break;
          }
        if (!admissible) continue;
        const int s_count = std::popcount(static_cast<unsigned>(mask));
        const int t_count = len - s_count;
        const double r = problem.radius;
        const double plus = r * std::sqrt(static_cast<double>(t_count) /
                                          static_cast<double>(len * s_count));
        const double minus = -r * std::sqrt(static_cast<double>(s_count) /
                                            static_cast<double>(len * t_count));
        for (int i = 0; i < len; ++i) z[i] = (mask >> i & 1) ? plus : minus;
        problem.apply(z.data(), az.data());
        double obj = 0.0;
        for (int i = 0; i < len; ++i) obj += z[i] * az[i];
        if (!problem.b.empty())
          for (int i = 0; i < len; ++i) obj += 2.0 * problem.b[i] * z[i];
        if (best_mask == -1 || obj < best_obj) {
          best_obj = obj;
          best_mask = mask;
        }
      }
      for (int i = 0; i < len; ++i)
        ((best_mask >> i & 1) ? s_list : t_list).push_back(l_set[i]);
    } else {
      detail::FreeProblem problem = detail::build_restricted_problem(
          g, cfg.c, l_set, region_of, task.d_before, task.d_after);
      problem.radius = std::sqrt(static_cast<double>(len)) / sqrt_n;
      const detail::EngineResult er = detail::minimize_on_sphere(problem, cfg, task.seed);
      if (!er.converged) ++result.stats.nonconverged_solves;

      std::size_t s_count = 0;
      for (vertex_t i = 0; i < len; ++i) {
        const bool in_s = er.z[i] > 0.0;
        ws.side[l_set[i]] = in_s ? 0 : 1;
        if (in_s) ++s_count;
      }

      if (task.lo == 0 && task.hi == n) {
        std::int64_t forward = 0, backward = 0;
        for (const Edge& e : g.edges()) {
          if (ws.side[e.u] == 0 && ws.side[e.v] == 1) ++forward;
          else if (ws.side[e.u] == 1 && ws.side[e.v] == 0) ++backward;
        }
        if (forward < backward) {
          for (vertex_t v : l_set) ws.side[v] ^= 1;
          s_count = static_cast<std::size_t>(len) - s_count;
        }
      }

      if (s_count == 0 || s_count == static_cast<std::size_t>(len)) {
        // Degenerate sign split; fall back to a balanced prefix of the
        // component-ordered priority topological order.
        ++result.stats.solver_fallbacks;
        fill_component_ranks(g, l_set, ws);
        for (vertex_t v : l_set) {
          std::int64_t prio = 0;
          for (vertex_t w : g.out_neighbors(v))
            if (region_of(w) == 2) ++prio;
          for (vertex_t u : g.in_neighbors(v))
            if (region_of(u) == 1) --prio;
          ws.minor[v] = prio;
        }
        std::vector<vertex_t> order = subset_priority_topo(g, l_set, ws);
        const auto split = static_cast<std::ptrdiff_t>((len + 1) / 2);
        s_list.assign(order.begin(), order.begin() + split);
        t_list.assign(order.begin() + split, order.end());
      } else {
        DirectionFixResult fix = direction_fix_impl(g, l_set, region_of, s_count, ws);
        s_list = std::move(fix.s);
        t_list = std::move(fix.t);
      }
    }

    vertex_t write = task.lo;
    double d_s = 0.0, d_t = 0.0;
    for (vertex_t v : s_list) {
      arrangement[write] = v;
      pos[v] = write++;
      d_s += dvec[v];
    }
    for (vertex_t v : t_list) {
      arrangement[write] = v;
      pos[v] = write++;
      d_t += dvec[v];
    }
    for (vertex_t v : l_set) ws.in_l[v] = 0;

#ifndef NDEBUG
    // precedence-list invariant: the refinement may not introduce an edge
    // from the new later set into the new earlier set
    for (vertex_t v : t_list)
      for (vertex_t w : g.out_neighbors(v))
        assert(!(pos[w] >= task.lo &&
                 pos[w] < task.lo + static_cast<vertex_t>(s_list.size())));
#endif

    const auto mid = static_cast<vertex_t>(task.lo + s_list.size());
    if (task.hi - mid > 1)
      tasks.push_back({mid, task.hi, CounterRng::derive(task.seed, static_cast<std::uint64_t>(mid)),
                       task.d_before + d_s, task.d_after});
    if (mid - task.lo > 1)
      tasks.push_back({task.lo, mid, CounterRng::derive(task.seed, static_cast<std::uint64_t>(task.lo)),
                       task.d_before, task.d_after + d_t});
  }

  result.order = TopologicalOrder::from_sequence(std::move(arrangement));
  if (!validate_toporder(g, result.order))
    throw validation_error("spectral_toporder: produced order failed validation");
  return result;
}

namespace {

std::vector<vertex_t> initial_remaining(const DiGraph& g) {
  std::vector<vertex_t> remaining(g.num_vertices());
  for (vertex_t v = 0; v < g.num_vertices(); ++v) remaining[v] = g.in_degree(v);
  return remaining;
}

[[noreturn]] void throw_cyclic(const char* who) {
  throw validation_error(std::string(who) + ": input graph is cyclic");
}

} // namespace

TopologicalOrder dfs_order(const DiGraph& g) {
  const vertex_t n = g.num_vertices();
  std::vector<vertex_t> remaining = initial_remaining(g);
  std::vector<vertex_t> stack, order;
  order.reserve(n);
  for (vertex_t v = n; v-- > 0;)
    if (remaining[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    const vertex_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto children = g.out_neighbors(v);
    for (auto it = children.rbegin(); it != children.rend(); ++it)
      if (--remaining[*it] == 0) stack.push_back(*it);
  }
  if (static_cast<vertex_t>(order.size()) != n) throw_cyclic("dfs_order");
  return TopologicalOrder::from_sequence(std::move(order));
}

TopologicalOrder bfs_min_outdeg_order(const DiGraph& g) {
  const vertex_t n = g.num_vertices();
  std::vector<vertex_t> remaining = initial_remaining(g);
  using Key = std::pair<vertex_t, vertex_t>;  // (out-degree, id)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  for (vertex_t v = 0; v < n; ++v)
    if (remaining[v] == 0) queue.push({g.out_degree(v), v});
  std::vector<vertex_t> order;
  order.reserve(n);
  while (!queue.empty()) {
    const vertex_t v = queue.top().second;
    queue.pop();
    order.push_back(v);
    for (vertex_t w : g.out_neighbors(v))
      if (--remaining[w] == 0) queue.push({g.out_degree(w), w});
  }
  if (static_cast<vertex_t>(order.size()) != n) throw_cyclic("bfs_min_outdeg_order");
  return TopologicalOrder::from_sequence(std::move(order));
}

TopologicalOrder cuthill_mckee_acyclic(const DiGraph& g) {
  const vertex_t n = g.num_vertices();
  std::vector<vertex_t> remaining = initial_remaining(g);
  auto degree_key = [&](vertex_t v) { return std::pair<vertex_t, vertex_t>{g.degree(v), v}; };

  std::vector<vertex_t> roots;
  for (vertex_t v = 0; v < n; ++v)
    if (remaining[v] == 0) roots.push_back(v);
  std::sort(roots.begin(), roots.end(),
            [&](vertex_t a, vertex_t b) { return degree_key(a) < degree_key(b); });

  std::deque<vertex_t> queue(roots.begin(), roots.end());
  std::vector<vertex_t> order, batch;
  order.reserve(n);
  while (!queue.empty()) {
    const vertex_t v = queue.front();
    queue.pop_front();
    order.push_back(v);
    batch.clear();
    for (vertex_t w : g.out_neighbors(v))
      if (--remaining[w] == 0) batch.push_back(w);
    std::sort(batch.begin(), batch.end(),
              [&](vertex_t a, vertex_t b) { return degree_key(a) < degree_key(b); });
    for (vertex_t w : batch) queue.push_back(w);
  }
  if (static_cast<vertex_t>(order.size()) != n) throw_cyclic("cuthill_mckee_acyclic");
  return TopologicalOrder::from_sequence(std::move(order));
}

TopologicalOrder gorder_acyclic(const DiGraph& g, int window) {
  if (window < 1) throw validation_error("gorder_acyclic: window must be >= 1");
  const vertex_t n = g.num_vertices();
  std::vector<vertex_t> remaining = initial_remaining(g);
  std::vector<std::int64_t> score(n, 0);
  std::vector<vertex_t> ready;
  for (vertex_t v = 0; v < n; ++v)
    if (remaining[v] == 0) ready.push_back(v);

  // Affinity of u to a window vertex v: direct edges in either direction
  // plus the number of shared in-neighbours; maintained incrementally as
  // the window slides.
  auto adjust = [&](vertex_t v, std::int64_t delta) {
    for (vertex_t w : g.out_neighbors(v)) score[w] += delta;
    for (vertex_t u : g.in_neighbors(v)) {
      score[u] += delta;
      for (vertex_t w : g.out_neighbors(u)) score[w] += delta;
    }
  };

  std::deque<vertex_t> recent;
  std::vector<vertex_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < ready.size(); ++i) {
      const vertex_t a = ready[i], b = ready[best];
      if (score[a] > score[b] || (score[a] == score[b] && a < b)) best = i;
    }
    const vertex_t v = ready[best];
    ready[best] = ready.back();
    ready.pop_back();
    order.push_back(v);

    recent.push_back(v);
    adjust(v, +1);
    if (static_cast<int>(recent.size()) > window) {
      adjust(recent.front(), -1);
      recent.pop_front();
    }

    for (vertex_t w : g.out_neighbors(v))
      if (--remaining[w] == 0) ready.push_back(w);
  }
  if (static_cast<vertex_t>(order.size()) != n) throw_cyclic("gorder_acyclic");
  return TopologicalOrder::from_sequence(std::move(order));
}

} // namespace dagorder
