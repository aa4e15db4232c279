#pragma once

#include <cstdint>

namespace dagorder {

// Counter-based pseudo-random numbers (splitmix64 finalizer over a keyed
// counter). Every draw is a pure function of (seed, stream, counter), so
// consumers can address draws by canonical indices instead of sharing
// mutable state. Division by 2^53 makes u01 exact in IEEE doubles, hence
// identical across platforms.
struct CounterRng {
  std::uint64_t seed{0};

  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const {
    const std::uint64_t keyed = mix(seed + kGolden * (stream + 1));
    return mix(keyed + kGolden * (counter + 1));
  }

  /// Uniform double in [0, 1).
  double u01(std::uint64_t stream, std::uint64_t counter) const {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [-1, 1).
  double symmetric(std::uint64_t stream, std::uint64_t counter) const {
    return 2.0 * u01(stream, counter) - 1.0;
  }

  bool coin(std::uint64_t stream, std::uint64_t counter) const {
    return (bits(stream, counter) & 1ull) != 0;
  }

  /// Uniform integer in [0, bound) via 128-bit multiply (bound > 0).
  std::uint64_t below(std::uint64_t stream, std::uint64_t counter, std::uint64_t bound) const {
    const auto wide = static_cast<unsigned __int128>(bits(stream, counter)) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  /// Derives an independent seed, e.g. for per-subproblem solver streams.
  static std::uint64_t derive(std::uint64_t parent_seed, std::uint64_t salt) {
    return mix(parent_seed + kGolden * (salt + 1));
  }
};

} // namespace dagorder
