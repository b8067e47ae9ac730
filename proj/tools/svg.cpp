#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

namespace zipfpoisson::cli {

namespace {

constexpr double kPanelWidth = 360.0;
constexpr double kPanelHeight = 300.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginTop = 40.0;
constexpr double kPanelGap = 80.0;

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

std::string coord(double value) { return fmt("%.2f", value); }
std::string label(double value) { return fmt("%.6g", value); }

/// One panel: y-values per 1-based k, linear axes anchored at y = 0.
std::string render_panel(const std::string& group_id,
                         const std::string& title,
                         const std::vector<double>& values, double x0,
                         double y0) {
  const int n = static_cast<int>(values.size());
  const double y_max = *std::max_element(values.begin(), values.end());
  const double y_span = y_max > 0.0 ? 1.1 * y_max : 1.0;

  const auto x_of = [&](int k) {
    return n > 1 ? x0 + (k - 1) * kPanelWidth / (n - 1) : x0 + kPanelWidth / 2;
  };
  const auto y_of = [&](double v) {
    return y0 + kPanelHeight - v / y_span * kPanelHeight;
  };

  std::string s;
  s += "  <g id=\"" + group_id + "\">\n";
  s += "    <text x=\"" + coord(x0 + kPanelWidth / 2) + "\" y=\"" +
       coord(y0 - 16) +
       "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">" +
       title + "</text>\n";

  // Axes.
  s += "    <line x1=\"" + coord(x0) + "\" y1=\"" + coord(y0) + "\" x2=\"" +
       coord(x0) + "\" y2=\"" + coord(y0 + kPanelHeight) +
       "\" stroke=\"black\"/>\n";
  s += "    <line x1=\"" + coord(x0) + "\" y1=\"" + coord(y0 + kPanelHeight) +
       "\" x2=\"" + coord(x0 + kPanelWidth) + "\" y2=\"" +
       coord(y0 + kPanelHeight) + "\" stroke=\"black\"/>\n";

  // Y ticks, 5 even divisions of the padded range.
  for (int i = 0; i <= 4; ++i) {
    const double v = y_span * i / 4.0;
    const double y = y_of(v);
    s += "    <line x1=\"" + coord(x0 - 4) + "\" y1=\"" + coord(y) +
         "\" x2=\"" + coord(x0) + "\" y2=\"" + coord(y) +
         "\" stroke=\"black\"/>\n";
    s += "    <text x=\"" + coord(x0 - 8) + "\" y=\"" + coord(y + 4) +
         "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" +
         label(v) + "</text>\n";
  }

  // X ticks at each k, thinned to at most ~10 labels.
  const int step = std::max(1, (n + 9) / 10);
  for (int k = 1; k <= n; k += step) {
    const double x = x_of(k);
    s += "    <line x1=\"" + coord(x) + "\" y1=\"" + coord(y0 + kPanelHeight) +
         "\" x2=\"" + coord(x) + "\" y2=\"" + coord(y0 + kPanelHeight + 4) +
         "\" stroke=\"black\"/>\n";
    s += "    <text x=\"" + coord(x) + "\" y=\"" +
         coord(y0 + kPanelHeight + 18) +
         "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" +
         std::to_string(k) + "</text>\n";
  }

  if (n > 1) {
    std::string points;
    for (int k = 1; k <= n; ++k) {
      if (!points.empty()) points += ' ';
      points += coord(x_of(k)) + "," + coord(y_of(values[k - 1]));
    }
    s += "    <polyline points=\"" + points +
         "\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\"/>\n";
  }
  for (int k = 1; k <= n; ++k) {
    s += "    <circle cx=\"" + coord(x_of(k)) + "\" cy=\"" +
         coord(y_of(values[k - 1])) + "\" r=\"3\" fill=\"#1f6fb2\"/>\n";
  }
  s += "  </g>\n";
  return s;
}

}  // namespace

std::string render_solution_svg(const InhomogeneousSolution& solution) {
  const double width = kMarginLeft * 2 + kPanelWidth * 2 + kPanelGap;
  const double height = kMarginTop + kPanelHeight + 60.0;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(width) +
       "\" height=\"" + coord(height) + "\" viewBox=\"0 0 " + coord(width) +
       " " + coord(height) + "\">\n";
  s += "  <rect width=\"" + coord(width) + "\" height=\"" + coord(height) +
       "\" fill=\"white\"/>\n";
  s += render_panel("time-values", "window endpoint t_k vs k",
                    solution.params.times, kMarginLeft, kMarginTop);
  s += render_panel("lambda-values", "rate lambda_k vs k",
                    solution.params.lambdas,
                    kMarginLeft + kPanelWidth + kPanelGap, kMarginTop);
  s += "</svg>\n";
  return s;
}

}  // namespace zipfpoisson::cli
