#pragma once

#include <cstdint>
#include <random>

namespace hdea {

// splitmix64 finalizer; avalanche-quality mixing for seed derivation.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream ids keep draws independent when the same 64-bit seed is reused
// in different roles (table generation vs population init vs variation).
inline constexpr uint32_t kStreamLandscape = 0;
inline constexpr uint32_t kStreamInit = 1;
inline constexpr uint32_t kStreamVariation = 2;

// mt19937_64 with bias-free helpers. The standard library distributions
// are implementation-defined, so every draw that has to be reproducible
// goes through these helpers instead.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint32_t stream = 0) {
    std::seed_seq seq{static_cast<uint32_t>(seed),
                      static_cast<uint32_t>(seed >> 32), stream};
    gen_.seed(seq);
  }

  uint64_t next_u64() { return gen_(); }

  bool next_bool() { return (gen_() >> 63) != 0; }

  // uniform in [0,1) with 53-bit resolution
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, bound); bound >= 1. Rejects the low tail so
  // the modulo is exact.
  uint64_t below(uint64_t bound) {
    uint64_t low = (0 - bound) % bound;  // 2^64 mod bound
    uint64_t x = gen_();
    while (x < low) x = gen_();
    return x % bound;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace hdea
