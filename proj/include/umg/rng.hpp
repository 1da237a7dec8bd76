#pragma once

#include <cstdint>
#include <random>

namespace umg {

// Seeded mt19937_64 with hand-rolled mappings.  std::uniform_int_distribution
// is implementation-defined, so outputs would not be stable across standard
// libraries; the raw engine stream is specified exactly, and these mappings
// are pure integer/float arithmetic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n).  Modulo bias is < n/2^64, irrelevant at our sizes.
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

  // Uniform integer in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double real(double lo, double hi) { return lo + (hi - lo) * real01(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace umg
