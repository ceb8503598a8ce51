#include "optlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace optlab {

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need >= 2 matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) continue;
    double lx = std::log10(x[i]), ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("fit_loglog_slope: not enough positive points");
  double nd = static_cast<double>(n);
  return (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
}

std::string render_loglog_svg(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel,
                              const std::vector<LogLogSeries>& series) {
  const int W = 720, H = 480;
  const int ml = 70, mr = 30, mt = 50, mb = 60;
  const char* colors[] = {"#1f6fb2", "#c23b22", "#3a8f3a", "#8158a8", "#b28b1f"};

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!(xmin < xmax)) xmax = xmin * 10.0;
  if (!(ymin < ymax)) ymax = ymin * 10.0;
  double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
  double ly0 = std::log10(ymin), ly1 = std::log10(ymax);

  auto px = [&](double x) {
    return ml + (std::log10(x) - lx0) / (lx1 - lx0) * (W - ml - mr);
  };
  auto py = [&](double y) {
    return H - mb - (std::log10(y) - ly0) / (ly1 - ly0) * (H - mt - mb);
  };

  std::ostringstream out;
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << title << "</text>\n";

  // axes box and decade grid lines
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
      << "\" height=\"" << H - mt - mb << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
    double x = std::pow(10.0, e);
    out << "<line x1=\"" << px(x) << "\" y1=\"" << mt << "\" x2=\"" << px(x) << "\" y2=\""
        << H - mb << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << px(x) << "\" y=\"" << H - mb + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
    double y = std::pow(10.0, e);
    out << "<line x1=\"" << ml << "\" y1=\"" << py(y) << "\" x2=\"" << W - mr << "\" y2=\""
        << py(y) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">1e" << e << "</text>\n";
  }
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\" font-size=\"13\">"
      << xlabel << "</text>\n";
  out << "<text x=\"18\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << H / 2 << ")\">" << ylabel << "</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    const char* col = colors[ci % 5];
    out << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) continue;
      out << px(s.x[i]) << "," << py(s.y[i]) << " ";
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) continue;
      out << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
          << "\" r=\"3\" fill=\"" << col << "\"/>\n";
    }
    out << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 18 + 16 * ci
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << col << "\">" << s.label
        << "</text>\n";
    ++ci;
  }

  if (!series.empty() && series.front().x.size() >= 2) {
    double slope = fit_loglog_slope(series.front().x, series.front().y);
    out << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 18
        << "\" font-size=\"12\" fill=\"#222\">fitted slope = " << slope << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace optlab
