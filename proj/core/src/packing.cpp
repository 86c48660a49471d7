#include "rfl/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "rfl/quadrature.hpp"

namespace rfl {

Packing pack_squares(double R, std::uint64_t ratio) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("pack_squares: R must be positive");
  if (ratio <= 16) throw std::invalid_argument("pack_squares: r < R/16 violated");
  const double r = R / static_cast<double>(ratio);
  const double a = std::sqrt(std::numbers::pi * r * R);

  // Cell [i a, (i+1) a] meets the open disc iff its closest point is within R.
  struct Candidate {
    std::int64_t key;  // (2i+1)^2 + (2j+1)^2, exact squared center distance in units of a/2
    std::int64_t i;
    std::int64_t j;
  };
  std::vector<Candidate> cand;
  const auto K = static_cast<std::int64_t>(std::ceil(R / a)) + 1;
  for (std::int64_t i = -K; i < K; ++i)
    for (std::int64_t j = -K; j < K; ++j) {
      const double x = std::clamp(0.0, i * a, (i + 1) * a);
      const double y = std::clamp(0.0, j * a, (j + 1) * a);
      if (x * x + y * y < R * R)
        cand.push_back({(2 * i + 1) * (2 * i + 1) + (2 * j + 1) * (2 * j + 1), i, j});
    }
  if (cand.size() < ratio) throw std::logic_error("pack_squares: fewer lattice squares than R/r");
  std::sort(cand.begin(), cand.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.key, x.i, x.j) < std::tie(y.key, y.i, y.j);
  });

  Packing p;
  p.mesh = a;
  p.candidates = cand.size();
  for (std::size_t k = 0; k < ratio; ++k) {
    const auto& c = cand[k];
    p.cells.push_back({c.i, c.j});
    p.squares.push_back({Point((c.i + 0.5) * a, (c.j + 0.5) * a), a});
  }
  return p;
}

double symmetric_difference_area(const Packing& p, double R) {
  const Disc d{0.0, R};
  CompensatedSum overlap;
  for (const auto& q : p.squares) overlap.add(disc_square_area(d, q));
  const double squares = static_cast<double>(p.squares.size()) * p.mesh * p.mesh / std::numbers::pi;
  return std::max(0.0, normalized_area(d) + squares - 2.0 * overlap.value());
}

double symmetric_difference_constant(const Packing& p, double R, std::uint64_t ratio) {
  const double r = R / static_cast<double>(ratio);
  return symmetric_difference_area(p, R) / (std::sqrt(r) * std::pow(R, 1.5));
}

}  // namespace rfl
