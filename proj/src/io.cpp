#include "rgg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "rgg/error.hpp"

namespace rgg {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error(ErrorCode::InternalConsistency, "number formatting failed");
  return std::string(buf, ptr);
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  const auto d = static_cast<std::size_t>(points.d());
  for (std::size_t k = 0; k < d; ++k) out << (k ? "," : "") << 'x' << (k + 1);
  out << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points[i];
    for (std::size_t k = 0; k < d; ++k) out << (k ? "," : "") << format_double(p[k]);
    out << '\n';
  }
}

PointSet read_points_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  int d = 0;
  std::vector<double> coords;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("x1", 0) == 0) {
      d = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
      continue;
    }
    int fields = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + comma, v);
      if (ec != std::errc() || ptr != line.data() + comma)
        throw Error(ErrorCode::ParseError, source + ": line " + std::to_string(lineno) + ": bad coordinate");
      coords.push_back(v);
      ++fields;
      pos = comma + 1;
    }
    if (d == 0) d = fields;
    if (fields != d)
      throw Error(ErrorCode::ParseError, source + ": line " + std::to_string(lineno) + ": expected " +
                                             std::to_string(d) + " fields, found " + std::to_string(fields));
  }
  if (coords.empty()) throw Error(ErrorCode::ParseError, source + ": no points");
  try {
    return PointSet(d, std::move(coords), PointKind::Sample);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, source + ": " + e.what());
  }
}

std::string svg_step_plot(std::span<const CdfSeries> series, const std::string& title) {
  constexpr double width = 640, height = 400, margin = 50;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : series) {
    if (s.sorted_atoms.empty()) continue;
    lo = std::min(lo, s.sorted_atoms.front());
    hi = std::max(hi, s.sorted_atoms.back());
  }
  if (!(lo < hi)) {
    lo = (std::isfinite(lo) ? lo : 0.0) - 1.0;
    hi = lo + 2.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto sx = [&](double x) { return margin + (x - lo) / (hi - lo) * (width - 2 * margin); };
  auto sy = [&](double y) { return height - margin - y * (height - 2 * margin); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << sy(0) << "\" x2=\"" << width - margin << "\" y2=\"" << sy(0)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << sy(0) << "\" x2=\"" << margin << "\" y2=\"" << sy(1)
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"" << sy(0) + 18 << "\" font-size=\"11\">" << format_double(lo)
      << "</text>\n";
  out << "<text x=\"" << width - margin << "\" y=\"" << sy(0) + 18 << "\" font-size=\"11\" text-anchor=\"end\">"
      << format_double(hi) << "</text>\n";
  out << "<text x=\"" << margin - 6 << "\" y=\"" << sy(1) + 4 << "\" font-size=\"11\" text-anchor=\"end\">1</text>\n";

  double legend_y = 40;
  for (const auto& s : series) {
    const auto& atoms = s.sorted_atoms;
    const double n = static_cast<double>(atoms.size());
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
    out << sx(lo) << ',' << sy(0);
    double level = 0.0;
    for (std::size_t i = 0; i < atoms.size();) {
      std::size_t j = i;
      while (j < atoms.size() && atoms[j] == atoms[i]) ++j;
      const double x = sx(atoms[i]);
      out << ' ' << x << ',' << sy(level);
      level = static_cast<double>(j) / n;
      out << ' ' << x << ',' << sy(level);
      i = j;
    }
    out << ' ' << sx(hi) << ',' << sy(level) << "\"/>\n";
    out << "<text x=\"" << width - margin - 150 << "\" y=\"" << legend_y << "\" font-size=\"12\" fill=\"" << s.color
        << "\">" << s.label << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace rgg
