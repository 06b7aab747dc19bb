#pragma once

#include <cstdint>
#include <random>

namespace mts {

// Deterministic random source. All derived values are computed from the raw
// mt19937_64 stream (which the standard pins down exactly), so seeded
// fixtures hold across compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace mts
