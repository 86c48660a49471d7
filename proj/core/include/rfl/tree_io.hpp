#pragma once

// Tree exchange format (JSON):
//   {"format": "rfl-tree", "version": 1, "depth": d,
//    "schedule": {"ratios": [...], "reciprocals": [...]},
//    "nodes": [[level, index, [re, im]], ...]}
// Nodes are the disc centers in level, then index order. Squares are not
// stored; they are rebuilt from the schedule on import.

#include <iosfwd>

#include "rfl/tree.hpp"

namespace rfl {

void export_tree(const ConstructionTree& tree, std::ostream& out);

// Throws std::runtime_error on malformed input and ScheduleError on an
// invalid schedule.
ConstructionTree import_tree(std::istream& in);

}  // namespace rfl
