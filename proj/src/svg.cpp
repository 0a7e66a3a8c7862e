#include "wb/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wb {

namespace {

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const PlotSpec& spec) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("svg plot: series length mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);

  const double W = 800, H = 560, L = 80, R = 20, T = 40, B = 60;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!xs.empty()) {
    x0 = *std::min_element(xs.begin(), xs.end());
    x1 = *std::max_element(xs.begin(), xs.end());
    y0 = *std::min_element(ys.begin(), ys.end());
    y1 = *std::max_element(ys.begin(), ys.end());
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"monospace\" font-size=\"16\">" << spec.title
      << "</text>\n";
  // axes
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R
      << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L
      << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << L << "\" y=\"" << H - B + 24
      << "\" font-family=\"monospace\" font-size=\"12\">" << num(x0)
      << "</text>\n";
  out << "<text x=\"" << W - R << "\" y=\"" << H - B + 24
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">"
      << num(x1) << "</text>\n";
  out << "<text x=\"" << L - 8 << "\" y=\"" << H - B
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">"
      << num(y0) << "</text>\n";
  out << "<text x=\"" << L - 8 << "\" y=\"" << T + 12
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">"
      << num(y1) << "</text>\n";
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16
      << "\" text-anchor=\"middle\" font-family=\"monospace\" "
      << "font-size=\"13\">" << spec.x_label << "</text>\n";
  out << "<text x=\"20\" y=\"" << (T + H - B) / 2
      << "\" font-family=\"monospace\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << (T + H - B) / 2 << ")\" "
      << "text-anchor=\"middle\">" << spec.y_label << "</text>\n";

  if (spec.scatter) {
    for (std::size_t i = 0; i < xs.size(); ++i)
      out << "<circle cx=\"" << num(px(xs[i])) << "\" cy=\""
          << num(py(ys[i])) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  } else if (!xs.empty()) {
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" "
        << "points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
      out << num(px(xs[i])) << "," << num(py(ys[i])) << " ";
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace wb
