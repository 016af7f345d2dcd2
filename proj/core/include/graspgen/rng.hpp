#pragma once

#include <cstdint>
#include <random>

namespace graspgen {

// splitmix64 step, used both as a seed mixer and to decorrelate derived
// streams. Reproducibility contract: every random quantity in the pipeline
// is derived from an explicit 64-bit seed through these helpers.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive an independent stream seed from a root seed and salt values.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = seed;
  splitmix64(s);
  s ^= a;
  splitmix64(s);
  s ^= b;
  splitmix64(s);
  s ^= c;
  return splitmix64(s);
}

/// Seeded generator with portable uniform-double mapping. The raw mt19937_64
/// sequence is pinned by the standard; distributions are mapped by hand so
/// output does not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo bias is irrelevant at the n values used here,
    // but keep the standard unbiased loop anyway.
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace graspgen
