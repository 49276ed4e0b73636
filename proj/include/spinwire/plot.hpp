#pragma once

// Minimal static SVG line chart. Presentation only.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spinwire/error.hpp"
#include "spinwire/format.hpp"

namespace spinwire {

struct PlotSeries {
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotLabels {
  std::string title;
  std::string x_axis;
  std::string y_axis;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

}  // namespace detail

inline std::string render_svg(const PlotSeries& data, const PlotLabels& labels) {
  if (data.x.empty() || data.x.size() != data.y.size()) {
    throw InvalidArgument("plot needs a non-empty trace with matching x and y");
  }
  constexpr double width = 640.0;
  constexpr double height = 400.0;
  constexpr double margin = 60.0;
  const auto [xmin_it, xmax_it] = std::minmax_element(data.x.begin(), data.x.end());
  double ymin = HUGE_VAL;
  double ymax = -HUGE_VAL;
  for (double y : data.y) {
    if (std::isfinite(y)) {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(ymin)) {
    ymin = 0.0;
    ymax = 1.0;
  }
  double xmin = *xmin_it;
  double xmax = *xmax_it;
  if (xmax == xmin) { xmax = xmin + 1.0; }
  if (ymax == ymin) { ymax = ymin + 1.0; }
  auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
  auto py = [&](double y) {
    return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
  };

  // Keep files small for very dense traces.
  const std::size_t stride = std::max<std::size_t>(1, data.x.size() / 5000);

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
     << "\" height=\"" << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < data.x.size(); i += stride) {
    if (!std::isfinite(data.y[i])) {
      continue;
    }
    os << px(data.x[i]) << ',' << py(data.y[i]) << ' ';
  }
  os << "\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">"
     << detail::xml_escape(labels.title) << "</text>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 15
     << "\" text-anchor=\"middle\" font-size=\"13\">" << detail::xml_escape(labels.x_axis)
     << "</text>\n";
  os << "<text x=\"15\" y=\"" << height / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
     << "transform=\"rotate(-90 15 " << height / 2 << ")\">" << detail::xml_escape(labels.y_axis)
     << "</text>\n";
  auto tick = [&](double x, double y, const std::string& text, const char* anchor) {
    os << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"" << anchor
       << "\" font-size=\"11\">" << text << "</text>\n";
  };
  tick(margin, height - margin + 16, format_double(xmin), "start");
  tick(width - margin, height - margin + 16, format_double(xmax), "end");
  tick(margin - 4, height - margin, format_double(ymin), "end");
  tick(margin - 4, margin + 4, format_double(ymax), "end");
  os << "</svg>\n";
  return os.str();
}

inline void emit_plot(const PlotSeries& data, const PlotLabels& labels, const std::string& path) {
  const std::string svg = render_svg(data, labels);  // validates before touching the file
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ComputationError("cannot open plot file for writing: " + path);
  }
  out << svg;
  if (!out.flush()) {
    throw ComputationError("failed writing plot file: " + path);
  }
}

}  // namespace spinwire
