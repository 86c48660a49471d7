#pragma once

// Static SVG figures.

#include <string>
#include <utility>
#include <vector>

#include "rfl/tree.hpp"

namespace rfl {

// Interior of node (n, j): enlarged disc, dashed core circle, child squares
// and child core discs.
std::string render_node_svg(const ConstructionTree& tree, int n, std::size_t j);

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

// Line plot with a logarithmic x axis.
std::string render_logx_plot_svg(const std::string& title, const std::string& xlabel,
                                 const std::vector<PlotSeries>& series);

}  // namespace rfl
