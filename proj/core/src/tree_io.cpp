#include "rfl/tree_io.hpp"

#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

namespace rfl {

void export_tree(const ConstructionTree& tree, std::ostream& out) {
  const auto& s = tree.schedule();
  fmt::print(out, "{{\"format\": \"rfl-tree\", \"version\": 1, \"depth\": {},\n", tree.depth());
  fmt::print(out, " \"schedule\": {{\"ratios\": [{}], \"reciprocals\": [{}]}},\n \"nodes\": [",
             fmt::join(s.ratios(), ", "), fmt::join(s.reciprocals(), ", "));
  bool first = true;
  for (int n = 0; n <= tree.depth(); ++n)
    for (std::size_t j = 0; j < tree.count(n); ++j) {
      const Point c = tree.centers(n)[j];
      fmt::print(out, "{}\n  [{}, {}, [{:.17g}, {:.17g}]]", first ? "" : ",", n, j, c.real(), c.imag());
      first = false;
    }
  fmt::print(out, "\n]}}\n");
}

ConstructionTree import_tree(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(fmt::format("tree file is not valid JSON: {}", e.what()));
  }
  if (j.value("format", "") != "rfl-tree") throw std::runtime_error("not an rfl-tree document");
  const auto ratios = j.at("schedule").at("ratios").get<std::vector<std::uint64_t>>();
  const auto schedule = RadiiSchedule::from_ratios(ratios);
  if (j.at("schedule").contains("reciprocals") &&
      j["schedule"]["reciprocals"].get<std::vector<std::uint64_t>>() != schedule.reciprocals())
    throw std::runtime_error("schedule reciprocals disagree with ratios");
  ConstructionTree tree = ConstructionTree::build(schedule, j.at("depth").get<int>());

  std::vector<std::vector<Point>> centers(tree.depth() + 1);
  for (int n = 0; n <= tree.depth(); ++n) centers[n].resize(tree.count(n));
  std::vector<std::size_t> seen(tree.depth() + 1, 0);
  for (const auto& node : j.at("nodes")) {
    const int n = node.at(0).get<int>();
    const auto idx = node.at(1).get<std::size_t>();
    if (n < 0 || n > tree.depth() || idx >= tree.count(n))
      throw std::runtime_error(fmt::format("node [{}, {}] outside the tree", n, idx));
    centers[n][idx] = {node.at(2).at(0).get<double>(), node.at(2).at(1).get<double>()};
    ++seen[n];
  }
  for (int n = 0; n <= tree.depth(); ++n) {
    if (seen[n] != tree.count(n))
      throw std::runtime_error(fmt::format("level {}: {} nodes listed, {} expected", n, seen[n], tree.count(n)));
    tree.set_disc_centers(n, std::move(centers[n]));
  }
  return tree;
}

}  // namespace rfl
