#pragma once

// Checks of the separation properties of a built hierarchy:
//   (a) every child square lies inside its parent's enlarged disc,
//   (b) each enlarged disc sits inside its square at distance >= sqrt(r_{n-1} r_n)/2
//       from the boundary,
//   (c) distinct enlarged discs of one level are >= sqrt(r_{n-1} r_n)/2 apart.

#include <cstdint>
#include <string>
#include <vector>

#include "rfl/tree.hpp"

namespace rfl {

struct PropertyCheck {
  char property = 'a';
  int level = 0;
  bool exhaustive = true;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double min_observed = 0.0;  // smallest margin (a) or distance (b), (c)
  double threshold = 0.0;

  bool pass() const { return violations == 0; }
};

struct SeparationReport {
  std::vector<PropertyCheck> checks;

  bool pass() const;
};

struct VerifyOptions {
  // Levels with at most this many nodes are checked exhaustively, larger
  // ones on `samples` random nodes.
  std::size_t exhaustive_limit = std::size_t{1} << 18;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  double tol = 1e-12;
};

SeparationReport verify_separation(const ConstructionTree& tree, const VerifyOptions& opts = {});

std::string summarize(const SeparationReport& report);

}  // namespace rfl
