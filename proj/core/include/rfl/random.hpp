#pragma once

// Seeded sampling with a platform-independent mapping from raw 64-bit draws.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "rfl/geometry.hpp"

namespace rfl {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t bits() { return g_(); }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  double log_uniform(double lo, double hi) { return lo * std::exp(uniform() * std::log(hi / lo)); }
  double angle() { return uniform(-std::numbers::pi, std::numbers::pi); }
  Point in_disc(Point c, double r) { return c + std::polar(r * std::sqrt(uniform()), angle()); }
  Point on_circle(Point c, double r) { return c + std::polar(r, angle()); }

 private:
  std::mt19937_64 g_;
};

}  // namespace rfl
