#pragma once

#include <cstdint>
#include <random>

namespace wb {

// Deterministic random source used by every stochastic routine.
// Engine: std::mt19937_64 with explicit seeding. Bounded draws and
// uniform doubles are derived with fixed arithmetic instead of
// std::uniform_*_distribution, whose output is implementation-defined;
// this keeps runs bit-reproducible for a given seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1) with 53 random bits.
  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Lemire-style multiply-shift (no rejection;
  // the bias is < 2^-64 per draw, irrelevant here, and the output is a pure
  // function of the engine stream).
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  // Derive a child seed; used to give parallel chains distinct streams.
  uint64_t derive(uint64_t salt) const {
    uint64_t z = seed_mix_ + salt * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  uint64_t seed_mix_ = 0x6a09e667f3bcc908ull;
};

}  // namespace wb
