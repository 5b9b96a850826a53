#pragma once

#include <string>
#include <vector>

namespace hrl::harness {

struct PlotSeries {
  std::string label;
  std::string color;  // any SVG color
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> spread;  // optional +/- band, same length as y or empty
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 800;
  int height = 480;
};

/// Stand-alone SVG document: axes with ticks, a shaded band per series when `spread` is set,
/// one polyline per series and a legend.
std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

/// Roughly `target` evenly spaced round tick values covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace hrl::harness
