#pragma once

#include <string>
#include <vector>

namespace optlab {

struct LogLogSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Least-squares slope of log10(y) against log10(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Static log-log scatter/line plot with the fitted slope of the first
// series annotated. Returns the SVG document.
std::string render_loglog_svg(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel,
                              const std::vector<LogLogSeries>& series);

}  // namespace optlab
