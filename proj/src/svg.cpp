#include "muskat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace muskat {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

}  // namespace

std::string render_svg(const std::vector<Series>& series, const PlotSpec& spec) {
  const int W = spec.width, H = spec.height;
  const int ml = 70, mr = 20, mt = 40, mb = 50;  // margins

  auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };

  Range rx, ry;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (spec.log_x && s.x[i] <= 0.0) continue;
      if (spec.log_y && s.y[i] <= 0.0) continue;
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      rx.add(tx(s.x[i]));
      ry.add(ty(s.y[i]));
    }
  }
  if (!(rx.lo <= rx.hi)) {
    rx = {0.0, 1.0};
    ry = {0.0, 1.0};
  }
  if (rx.hi == rx.lo) {
    rx.lo -= 0.5;
    rx.hi += 0.5;
  }
  if (ry.hi == ry.lo) {
    ry.lo -= 0.5;
    ry.hi += 0.5;
  }
  const double padx = 0.04 * (rx.hi - rx.lo), pady = 0.06 * (ry.hi - ry.lo);
  rx.lo -= padx;
  rx.hi += padx;
  ry.lo -= pady;
  ry.hi += pady;

  auto px = [&](double v) { return ml + (tx(v) - rx.lo) / (rx.hi - rx.lo) * (W - ml - mr); };
  auto py = [&](double v) { return H - mb - (ty(v) - ry.lo) / (ry.hi - ry.lo) * (H - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  if (!spec.comment.empty()) {
    svg << "<!-- " << spec.comment << " -->\n";
  }
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << spec.title
      << "</text>\n";
  svg << "<text x='" << W / 2 << "' y='" << H - 12 << "' text-anchor='middle' font-size='12'>"
      << spec.xlabel << "</text>\n";
  svg << "<text x='16' y='" << H / 2 << "' text-anchor='middle' font-size='12' transform='rotate(-90 16 "
      << H / 2 << ")'>" << spec.ylabel << "</text>\n";
  // frame + ticks
  svg << "<rect x='" << ml << "' y='" << mt << "' width='" << (W - ml - mr) << "' height='"
      << (H - mt - mb) << "' fill='none' stroke='#444'/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = rx.lo + t * (rx.hi - rx.lo) / 4.0;
    const double fy = ry.lo + t * (ry.hi - ry.lo) / 4.0;
    const double xpix = ml + t * (W - ml - mr) / 4.0;
    const double ypix = H - mb - t * (H - mt - mb) / 4.0;
    const double xv = spec.log_x ? std::pow(10.0, fx) : fx;
    const double yv = spec.log_y ? std::pow(10.0, fy) : fy;
    svg << "<text x='" << xpix << "' y='" << H - mb + 16
        << "' text-anchor='middle' font-size='10'>" << fmt(xv) << "</text>\n";
    svg << "<text x='" << ml - 6 << "' y='" << ypix + 3
        << "' text-anchor='end' font-size='10'>" << fmt(yv) << "</text>\n";
  }
  int ci = 0;
  for (const auto& s : series) {
    const char* color = kPalette[ci % 8];
    std::ostringstream pts;
    int kept = 0;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (spec.log_x && s.x[i] <= 0.0) continue;
      if (spec.log_y && s.y[i] <= 0.0) continue;
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      pts << px(s.x[i]) << "," << py(s.y[i]) << " ";
      ++kept;
    }
    if (kept > 0) {
      if (spec.scatter || kept == 1) {
        std::istringstream read(pts.str());
        std::string pair;
        while (read >> pair) {
          const auto comma = pair.find(',');
          svg << "<circle cx='" << pair.substr(0, comma) << "' cy='" << pair.substr(comma + 1)
              << "' r='4' fill='" << color << "'/>\n";
        }
      } else {
        svg << "<polyline points='" << pts.str() << "' fill='none' stroke='" << color
            << "' stroke-width='1.5'/>\n";
      }
      svg << "<text x='" << W - mr - 6 << "' y='" << mt + 16 + 14 * ci
          << "' text-anchor='end' font-size='11' fill='" << color << "'>" << s.label
          << "</text>\n";
    }
    ++ci;
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_svg(const std::vector<Series>& series, const PlotSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << render_svg(series, spec);
}

}  // namespace muskat
