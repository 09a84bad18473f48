#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lt {

// Deterministic random source. The distribution transforms are written out
// here instead of using <random> distribution objects, whose output is
// implementation-defined: a seed must produce the same stream on every
// build, or seeded experiments stop being reproducible.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive on both ends; modulo bias is irrelevant at the range sizes
  // used here (all far below 2^32)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

  // Box-Muller, one value per pair of uniforms; no cached spare so the
  // stream position is a pure function of the call count.
  double normal() {
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t raw() { return eng_(); }

private:
  std::mt19937_64 eng_;
};

}  // namespace lt
