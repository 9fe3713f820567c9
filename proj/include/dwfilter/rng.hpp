#pragma once

#include <cstdint>
#include <random>

namespace dwf {

// std::mt19937_64 seeded with the raw 64-bit seed. Integer draws use
// rejection sampling on the raw output so sequences do not depend on the
// standard library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<std::int64_t>(next());  // full 64-bit range
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span + 1) % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x > limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dwf
