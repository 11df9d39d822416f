#pragma once

#include <cstdint>

namespace mmrt {

// Seed for every randomized operation. Same seed + same inputs gives
// bit-identical outputs on any platform, which is why the generator below
// is hand-rolled instead of <random> (std distributions are not portable).
struct Seed {
  std::uint64_t value = 0;
};

namespace detail {
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

// Independent stream for (seed, salt); used to give each case / variant its
// own seed so results do not depend on execution order.
inline Seed derive_seed(Seed base, std::uint64_t salt) {
  return Seed{detail::splitmix64_mix(base.value ^ ((salt + 1) * 0x9E3779B97F4A7C15ULL))};
}

class Rng {
 public:
  explicit Rng(Seed seed) : state_(seed.value) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return detail::splitmix64_mix(state_);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

}  // namespace mmrt
