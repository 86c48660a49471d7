#pragma once

// Packing R/r lattice squares of side sqrt(pi r R) around a disc of radius R.

#include <cstdint>
#include <vector>

#include "rfl/geometry.hpp"

namespace rfl {

struct LatticeCell {
  std::int64_t i = 0;
  std::int64_t j = 0;
};

struct Packing {
  double mesh = 0.0;                // side sqrt(pi r R)
  std::vector<Square> squares;      // centered at the origin
  std::vector<LatticeCell> cells;   // square k is [i a, (i+1) a] x [j a, (j+1) a]
  std::size_t candidates = 0;       // lattice squares meeting B(0, R)
};

// Keeps the R/r squares of the lattice (vertex at the origin) whose centers
// are closest to the origin, ties broken by (center.re, center.im). Throws
// std::invalid_argument unless ratio = R/r is an integer with r < R/16.
Packing pack_squares(double R, std::uint64_t ratio);

// m2(B(0, R) symmetric-difference union of the squares).
double symmetric_difference_area(const Packing& p, double R);

// symmetric_difference_area / (r^{1/2} R^{3/2}).
double symmetric_difference_constant(const Packing& p, double R, std::uint64_t ratio);

}  // namespace rfl
