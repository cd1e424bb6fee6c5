#pragma once

#include <cstdint>
#include <random>

namespace nrp {

/// splitmix64 finalizer; used to derive independent sub-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Deterministic random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard, and every bounded draw below is implemented explicitly (rejection
/// sampling / bit shifts) instead of relying on std::uniform_*_distribution,
/// whose mapping is implementation-defined.  The same seed therefore yields
/// the same instances and search trajectories on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform draw in [0, bound); bound must be >= 1.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling: discard the bias region 2^64 mod bound.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform draw in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() & 1) != 0; }

  /// Seed for an independent sub-stream (e.g. one restart of a search).
  std::uint64_t fork_seed() { return splitmix64(next()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nrp
