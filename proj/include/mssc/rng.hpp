#pragma once

// SplitMix64 (Steele, Lea & Flood; Vigna's public-domain constants).
//
// Chosen as the project-wide generator because it is trivially portable:
// the whole state is one 64-bit word, the update is three xor-shift-multiply
// steps, and identical seeds reproduce identical streams on any platform.
// Reference outputs, checked in tests/test_core.cpp against an independent
// implementation: seed 1234567 yields
//   6457827717110365317, 3203168211198807973, 9817491932198370423.

#include <cstdint>

namespace mssc {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 significant bits.
  double next_double() { return (next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  // Independent child stream; advances this stream by one draw.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

}  // namespace mssc
