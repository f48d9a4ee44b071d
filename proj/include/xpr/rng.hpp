#pragma once

#include <cstdint>
#include <cmath>

namespace xpr {

/// Deterministic splitmix64 generator. Used instead of <random> engines so
/// that seeded runs reproduce bit-for-bit across platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Stream `index` derived from a master seed; used to hand independent,
  /// reproducible streams to parallel workers (restarts, trials).
  static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
    Rng mix(master_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    mix.next_u64();
    return mix;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Log-uniform over [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  int sign() { return (next_u64() & 1ULL) ? 1 : -1; }

 private:
  std::uint64_t state_;
};

}  // namespace xpr
