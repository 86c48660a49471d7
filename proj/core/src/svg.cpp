#include "rfl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace rfl {

std::string render_node_svg(const ConstructionTree& tree, int n, std::size_t j) {
  const TreeNode node = tree.node(n, j);
  const double R = node.enlarged.radius;
  const double size = 600.0;
  const double scale = 0.45 * size / R;
  const auto X = [&](double x) { return size / 2 + (x - node.core.center.real()) * scale; };
  const auto Y = [&](double y) { return size / 2 - (y - node.core.center.imag()) * scale; };

  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      size);
  s += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
                   X(node.enlarged.center.real()), Y(node.enlarged.center.imag()), R * scale);
  s += fmt::format(
      "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n",
      X(node.core.center.real()), Y(node.core.center.imag()), node.core.radius * scale);
  for (std::size_t k = 0; k < node.child_count; ++k) {
    const std::size_t c = node.first_child + k;
    const Square q = tree.square(n + 1, c);
    s += fmt::format(
        "<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\" fill=\"none\" stroke=\"#4063a0\" stroke-width=\"0.7\"/>\n",
        X(q.center.real() - q.half()), Y(q.center.imag() + q.half()), q.side * scale, q.side * scale);
    const Disc d = tree.core_disc(n + 1, c);
    s += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\" fill=\"#c03030\"/>\n", X(d.center.real()),
                     Y(d.center.imag()), std::max(0.8, d.radius * scale));
  }
  s += "</svg>\n";
  return s;
}

std::string render_logx_plot_svg(const std::string& title, const std::string& xlabel,
                                 const std::vector<PlotSeries>& series) {
  const double W = 720, H = 420, L = 70, Rm = 20, T = 40, B = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& ser : series)
    for (auto [x, y] : ser.points) {
      if (!(x > 0)) continue;
      x0 = std::min(x0, std::log10(x));
      x1 = std::max(x1, std::log10(x));
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  const auto X = [&](double x) { return L + (std::log10(x) - x0) / (x1 - x0) * (W - L - Rm); };
  const auto Y = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">{}</text>\n"
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n"
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
      W, H, L, title, W / 2, H - 12, xlabel, L, T, W - L - Rm, H - T - B);
  for (double e = std::ceil(x0); e <= x1; e += 1.0)
    s += fmt::format("<text x=\"{:.1f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">1e{}</text>\n",
                     X(std::pow(10.0, e)) - 10, H - B + 16, static_cast<int>(e));
  s += fmt::format("<text x=\"4\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\">{:.3g}</text>\n", Y(y1) + 4, y1);
  s += fmt::format("<text x=\"4\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\">{:.3g}</text>\n", Y(y0) + 4, y0);
  int row = 0;
  for (const auto& ser : series) {
    std::string pts;
    for (auto [x, y] : ser.points)
      if (x > 0) pts += fmt::format("{:.2f},{:.2f} ", X(x), Y(y));
    s += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", pts, ser.color);
    s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{}\">{}</text>\n",
                     W - Rm - 140, T + 18 + 16 * row++, ser.color, ser.label);
  }
  s += "</svg>\n";
  return s;
}

}  // namespace rfl
