#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace kobalt {

/// Seeded sampler with portable output.  std::mt19937_64 is specified
/// bit-exactly by the standard; the float mapping below avoids
/// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::complex<double> complex_in_disk(double radius = 1.0) {
    // rejection from the bounding square
    for (;;) {
      const double x = uniform(-1.0, 1.0);
      const double y = uniform(-1.0, 1.0);
      if (x * x + y * y < 1.0) return {radius * x, radius * y};
    }
  }

  std::complex<double> complex_in_box(double half_width) {
    return {uniform(-half_width, half_width), uniform(-half_width, half_width)};
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace kobalt
