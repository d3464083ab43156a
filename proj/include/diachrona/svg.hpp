#pragma once

#include <string>
#include <vector>

namespace diachrona {

struct Curve {
  std::string name;
  /// (x, y) pairs; points with a NaN y are left out of the polyline.
  std::vector<std::pair<double, double>> points;
};

struct LabeledPoint {
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

struct PlotSpec {
  enum class Kind { Series, Scatter };

  Kind kind = Kind::Series;
  std::string title;
  int width = 800;
  int height = 500;
  std::string x_label;
  std::string y_label;
  std::vector<Curve> curves;         // Series
  std::vector<LabeledPoint> points;  // Scatter
};

/// Standalone SVG document. Series plots draw one polyline per curve,
/// scatter plots one circle and one `class="label"` text node per point;
/// both draw axes with tick labels. Empty data gives bare axes. Throws
/// std::invalid_argument for non-positive dimensions.
std::string emit_svg(const PlotSpec& spec);

std::string xml_escape(std::string_view s);

}  // namespace diachrona
