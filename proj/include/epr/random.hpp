#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace epr {

// Seeded generator with a fixed normal-variate recipe.  std::normal_distribution
// is implementation-defined, so Box-Muller is done by hand: identical seeds give
// identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1).
  double uniform() {
    // 53-bit mantissa draw.
    return (gen_() >> 11) * 0x1.0p-53;
  }

  // Standard normal.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  // Uniform integer in [0, bound).  bound must be positive.
  std::uint64_t integer(std::uint64_t bound) {
    // Rejection-free modulo is biased for huge bounds; bounds here are array
    // sizes, far below 2^53, so scaling a uniform double is exact enough and
    // keeps the stream platform-stable.
    auto v = static_cast<std::uint64_t>(uniform() * static_cast<double>(bound));
    return v < bound ? v : bound - 1;
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace epr
