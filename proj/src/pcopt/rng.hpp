#ifndef PCOPT_RNG_HPP
#define PCOPT_RNG_HPP

#include <cmath>
#include <cstdint>

// Deterministic, implementation-independent random primitives. Standard
// library distributions are implementation-defined, so everything that has
// to replay bit-exactly (oracle noise, coordinate sampling, initial points)
// goes through these.

namespace pcopt {

// splitmix64 finalizer; stateless avalanche of a 64-bit value.
inline std::uint64_t mix_hash(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) noexcept {
  return mix_hash(seed ^ (mix_hash(v) + 0x9E3779B97F4A7C15ull));
}

// Uniform double in [0, 1) from 53 high bits.
inline double u01_from_bits(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform01() noexcept { return u01_from_bits(next()); }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform01();
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Box-Muller; consumes two words per draw.
  double normal() noexcept {
    double u1 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform01();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace pcopt

#endif  // PCOPT_RNG_HPP
