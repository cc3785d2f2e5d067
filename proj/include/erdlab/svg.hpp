#pragma once

#include <string>
#include <utility>
#include <vector>

#include <erdlab/types.hpp>

namespace erdlab {

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  bool line = true;  // false draws markers only
};

struct SvgChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool diagonal = false;  // y = x guide line
  bool log_y = false;     // log10 axis; non-positive points are dropped
};

/// Minimal line/scatter chart with axes, ticks and a legend. Plots are
/// derived views of CSV content and never feed back into it.
void svg_chart(const std::string& path, const SvgChartOptions& options,
               const std::vector<SvgSeries>& series);

/// Cell grid of a dense matrix, diverging blue-white-red around zero when
/// negative values are present, white-to-red otherwise.
void svg_heatmap(const std::string& path, const std::string& title, const Matrix& values);

}  // namespace erdlab
