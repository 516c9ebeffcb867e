#pragma once

#include <cstdint>
#include <random>

namespace pidtrunc {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of sub-stream `task` under `root`:
///   splitmix64(root ^ splitmix64(task + 1)).
/// Every parallel task draws from its own derived stream, so results never
/// depend on how tasks are scheduled.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t task) noexcept {
  return splitmix64(root ^ splitmix64(task + 1));
}

/// mt19937_64 with a portable uniform draw; std::uniform_real_distribution
/// is not guaranteed to produce the same stream across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pidtrunc
