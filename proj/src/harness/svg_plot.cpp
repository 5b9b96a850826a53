#include "hrl/harness/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hrl::harness {

namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  std::ostringstream s;
  if (std::abs(v) >= 10000.0) {
    s << v / 1000.0 << "k";
  } else {
    s << v;
  }
  return s.str();
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) {
    return {lo};
  }
  const double raw = (hi - lo) / std::max(1, target - 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) {
      break;
    }
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  }
  return ticks;
}

std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options) {
  const double left = 80.0;
  const double right = 30.0;
  const double top = 40.0;
  const double bottom = 60.0;
  const double plot_w = options.width - left - right;
  const double plot_h = options.height - top - bottom;

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      const double band = k < s.spread.size() ? s.spread[k] : 0.0;
      x_lo = std::min(x_lo, s.x[k]);
      x_hi = std::max(x_hi, s.x[k]);
      y_lo = std::min(y_lo, s.y[k] - band);
      y_hi = std::max(y_hi, s.y[k] + band);
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double y_pad = 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;

  const auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << " " << options.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << options.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(options.title) << "</text>\n";

  // Grid and ticks.
  for (const double t : nice_ticks(x_lo, x_hi)) {
    svg << "<line x1=\"" << px(t) << "\" y1=\"" << top << "\" x2=\"" << px(t) << "\" y2=\""
        << top + plot_h << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << px(t) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (const double t : nice_ticks(y_lo, y_hi)) {
    svg << "<line x1=\"" << left << "\" y1=\"" << py(t) << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << py(t) << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">"
        << tick_label(t) << "</text>\n";
  }
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << options.height - 15
      << "\" text-anchor=\"middle\">" << escape(options.x_label) << "</text>\n";
  svg << "<text transform=\"translate(18," << top + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(options.y_label) << "</text>\n";

  for (const auto& s : series) {
    if (s.x.empty()) {
      continue;
    }
    if (s.spread.size() == s.y.size()) {
      svg << "<polygon fill=\"" << s.color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
      for (std::size_t k = 0; k < s.x.size(); ++k) {
        svg << px(s.x[k]) << "," << py(s.y[k] + s.spread[k]) << " ";
      }
      for (std::size_t k = s.x.size(); k-- > 0;) {
        svg << px(s.x[k]) << "," << py(s.y[k] - s.spread[k]) << " ";
      }
      svg << "\"/>\n";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      svg << px(s.x[k]) << "," << py(s.y[k]) << " ";
    }
    svg << "\"/>\n";
  }

  // Legend, bottom right inside the plot area.
  double ly = top + plot_h - 12.0 - 18.0 * static_cast<double>(series.size() - 1);
  for (const auto& s : series) {
    const double lx = left + plot_w - 170.0;
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
        << "\" stroke=\"" << s.color << "\" stroke-width=\"3\"/>\n";
    svg << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">" << escape(s.label)
        << "</text>\n";
    ly += 18.0;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hrl::harness
