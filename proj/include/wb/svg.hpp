#pragma once

#include <string>
#include <vector>

namespace wb {

// Minimal data plot: fixed 800x560 viewport, axes with min/max labels, one
// polyline or scatter series. Output is plain SVG, deterministic for equal
// inputs.
struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool scatter = false;
};

void write_svg_plot(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const PlotSpec& spec);

}  // namespace wb
