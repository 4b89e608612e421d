#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rgg/geometry.hpp"

namespace rgg {

/// Shortest round-trip-safe text with 17 significant digits, '.' separator.
std::string format_double(double v);

/// Header x1,...,xd then one point per line.
void write_points_csv(std::ostream& out, const PointSet& points);
PointSet read_points_csv(std::istream& in, const std::string& source = "<stream>");

struct CdfSeries {
  std::string label;
  std::string color;
  std::span<const double> sorted_atoms;
};

/// Minimal SVG with axes and one step polyline per series.
std::string svg_step_plot(std::span<const CdfSeries> series, const std::string& title);

}  // namespace rgg
