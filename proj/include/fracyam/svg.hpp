#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

namespace fracyam {

/// Minimal SVG line plot: one polyline per series, log-x optional.
inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::vector<std::vector<std::pair<double, double>>>& series) {
  const int W = 640, H = 420, ML = 60, MB = 40, MT = 30, MR = 20;
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series)
    for (auto [x, y] : s) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  auto px = [&](double x) { return ML + (x - x0) / (x1 - x0) * (W - ML - MR); };
  auto py = [&](double y) { return H - MB - (y - y0) / (y1 - y0) * (H - MB - MT); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ofstream os(path);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
     << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  os << "<text x='" << W / 2 << "' y='18' text-anchor='middle' font-size='14'>"
     << title << "</text>\n";
  os << "<line x1='" << ML << "' y1='" << H - MB << "' x2='" << W - MR << "' y2='"
     << H - MB << "' stroke='black'/>\n";
  os << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << H - MB
     << "' stroke='black'/>\n";
  for (size_t k = 0; k < series.size(); ++k) {
    os << "<polyline fill='none' stroke='" << colors[k % 5] << "' points='";
    for (auto [x, y] : series[k]) os << px(x) << ',' << py(y) << ' ';
    os << "'/>\n";
  }
  os << "</svg>\n";
}

}  // namespace fracyam
