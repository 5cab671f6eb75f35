#pragma once

#include <string>
#include <vector>

namespace muskat {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

struct PlotSpec {
  std::string title, xlabel, ylabel;
  std::string comment;  // emitted as an SVG comment (config hash etc.)
  bool log_x = false;
  bool log_y = false;
  bool scatter = false;
  int width = 720, height = 480;
};

// Static line/scatter plot; series with nonpositive values are dropped from
// log axes.
std::string render_svg(const std::vector<Series>& series, const PlotSpec& spec);
void write_svg(const std::vector<Series>& series, const PlotSpec& spec,
               const std::string& path);

}  // namespace muskat
