#include "dagorder/synthgen.hpp"

#include <algorithm>
#include <unordered_set>

#include "dagorder/errors.hpp"
#include "dagorder/rng.hpp"

namespace dagorder {

std::string to_string(SynthFamily family) {
  switch (family) {
    case SynthFamily::ER: return "er";
    case SynthFamily::WS: return "ws";
    default: return "sbm";
  }
}

SynthFamily synth_family_from_string(const std::string& name) {
  if (name == "er") return SynthFamily::ER;
  if (name == "ws") return SynthFamily::WS;
  if (name == "sbm") return SynthFamily::SBM;
  throw validation_error("unknown synthetic family '" + name + "'");
}

namespace {

enum Stream : std::uint64_t {
  kExist = 1,
  kRewire = 2,
  kTarget = 3,
  kIntraDir = 4,
  kCrossDir = 5,
};

void validate(const SynthConfig& cfg) {
  if (cfg.n < 2 || cfg.n % 2 != 0)
    throw validation_error("synthgen: n must be even and >= 2");
  auto prob = [](double p, const char* name) {
    if (p < 0.0 || p > 1.0)
      throw validation_error(std::string("synthgen: ") + name + " must lie in [0,1]");
  };
  prob(cfg.p, "p");
  prob(cfg.p_int, "p_int");
  prob(cfg.p_ext, "p_ext");
  prob(cfg.alpha, "alpha");
  if (cfg.family == SynthFamily::WS) {
    if (cfg.k <= 0 || cfg.k % 2 != 0 || cfg.k >= cfg.n)
      throw validation_error("synthgen: WS requires an even k with 0 < k < n");
  }
}

std::uint64_t pair_key(vertex_t n, vertex_t u, vertex_t v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
         static_cast<std::uint64_t>(v);
}

} // namespace

SynthResult generate(const SynthConfig& cfg) {
  validate(cfg);
  const vertex_t n = cfg.n;
  const vertex_t half = n / 2;
  const CounterRng rng{cfg.seed};
  auto in_b = [&](vertex_t v) { return v >= half; };

  // Undirected skeleton as pairs (u < v).
  std::vector<std::pair<vertex_t, vertex_t>> pairs;
  if (cfg.family == SynthFamily::ER || cfg.family == SynthFamily::SBM) {
    for (vertex_t u = 0; u < n; ++u) {
      for (vertex_t v = u + 1; v < n; ++v) {
        const double p = cfg.family == SynthFamily::ER ? cfg.p
                         : in_b(u) == in_b(v)          ? cfg.p_int
                                                       : cfg.p_ext;
        if (rng.u01(kExist, pair_key(n, u, v)) < p) pairs.emplace_back(u, v);
      }
    }
  } else {
    // WS: ring with k/2 clockwise neighbours per vertex, then rewire each
    // clockwise edge with probability p. Replacement targets are redrawn
    // until they produce neither a self-loop nor a duplicate.
    std::unordered_set<std::uint64_t> edge_set;
    const vertex_t half_k = cfg.k / 2;
    edge_set.reserve(static_cast<std::size_t>(n) * half_k * 2);
    for (vertex_t v = 0; v < n; ++v)
      for (vertex_t j = 1; j <= half_k; ++j)
        edge_set.insert(pair_key(n, v, static_cast<vertex_t>((v + j) % n)));

    for (vertex_t v = 0; v < n; ++v) {
      for (vertex_t j = 1; j <= half_k; ++j) {
        const std::uint64_t idx =
            static_cast<std::uint64_t>(v) * half_k + static_cast<std::uint64_t>(j - 1);
        if (rng.u01(kRewire, idx) >= cfg.p) continue;
        const auto old_target = static_cast<vertex_t>((v + j) % n);
        edge_set.erase(pair_key(n, v, old_target));
        for (std::uint64_t draw = 0;; ++draw) {
          const auto w = static_cast<vertex_t>(rng.below(kTarget, idx * 4096 + draw, n));
          if (w == v || edge_set.count(pair_key(n, v, w)) != 0) continue;
          edge_set.insert(pair_key(n, v, w));
          break;
        }
      }
    }
    pairs.reserve(edge_set.size());
    for (std::uint64_t key : edge_set)
      pairs.emplace_back(static_cast<vertex_t>(key / n), static_cast<vertex_t>(key % n));
    std::sort(pairs.begin(), pairs.end());
  }

  // Orientation pass; draws keyed by the pair itself.
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    const std::uint64_t key = pair_key(n, u, v);
    if (in_b(u) == in_b(v)) {
      edges.push_back(rng.coin(kIntraDir, key) ? Edge{u, v} : Edge{v, u});
    } else {
      // u < v and the halves are id-contiguous, so u is in A, v in B.
      edges.push_back(rng.u01(kCrossDir, key) < cfg.alpha ? Edge{v, u} : Edge{u, v});
    }
  }

  std::vector<std::uint8_t> planted(n, 0);
  for (vertex_t v = half; v < n; ++v) planted[v] = 1;

  SynthResult out;
  out.graph = DiGraph(n, edges);
  out.planted = BiPartition(std::move(planted));
  return out;
}

} // namespace dagorder
