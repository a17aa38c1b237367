#include "hankel/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hankel/errors.hpp"
#include "hankel/experiments.hpp"

namespace hankel {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 150, kTop = 50, kBottom = 70;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  return ec == std::errc() && ptr == end && std::isfinite(v);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

/// Round-number tick step giving roughly `target` intervals over span.
double tick_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double nice = r < 1.5 ? 1 : (r < 3 ? 2 : (r < 7 ? 5 : 10));
  return nice * mag;
}

struct Axis {
  double lo, hi, step;
};

Axis make_axis(double lo, double hi) {
  if (hi - lo < 1e-12 * std::max(1.0, std::fabs(hi))) {
    const double pad = std::max(1.0, std::fabs(hi) * 0.1);
    lo -= pad;
    hi += pad;
  }
  const double step = tick_step(hi - lo, 5);
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<PctSeries> read_pct_csv(std::istream& in) {
  std::vector<PctSeries> series;
  std::string line;
  long line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kTable1Header) {
        throw IoError("line " + std::to_string(line_no) + ": expected header '" + kTable1Header + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != 5) {
      throw IoError("line " + std::to_string(line_no) + ": expected 5 fields, found " +
                    std::to_string(cells.size()));
    }
    double n = 0, pct = 0;
    if (cells[0].empty()) throw IoError("line " + std::to_string(line_no) + ": empty beta");
    if (!parse_double(cells[1], n)) throw IoError("line " + std::to_string(line_no) + ": bad N '" + cells[1] + "'");
    if (cells[4].empty()) continue;
    if (!parse_double(cells[4], pct)) {
      throw IoError("line " + std::to_string(line_no) + ": bad pct_error '" + cells[4] + "'");
    }
    auto it = std::find_if(series.begin(), series.end(), [&](const PctSeries& s) { return s.beta == cells[0]; });
    if (it == series.end()) {
      series.push_back(PctSeries{cells[0], {}});
      it = series.end() - 1;
    }
    it->points.emplace_back(n, pct);
  }
  if (!header_seen) throw IoError("line 1: empty CSV");
  return series;
}

std::string render_pct_svg(const std::vector<PctSeries>& series) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) throw DomainError("plot: no data points");
  ymin = std::min(ymin, 0.0);
  const Axis ax = make_axis(xmin, xmax);
  const Axis ay = make_axis(ymin, ymax);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double y) { return kTop + (ay.hi - y) / (ay.hi - ay.lo) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n"
    << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
    << "font-size=\"16\">Percentage error of the predicted smallest eigenvalue</text>\n";

  o << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double t = ax.lo; t <= ax.hi + ax.step * 1e-9; t += ax.step) {
    o << "<line x1=\"" << coord(px(t)) << "\" y1=\"" << coord(kTop) << "\" x2=\"" << coord(px(t)) << "\" y2=\""
      << coord(kTop + ph) << "\"/>\n";
  }
  for (double t = ay.lo; t <= ay.hi + ay.step * 1e-9; t += ay.step) {
    o << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(py(t)) << "\" x2=\"" << coord(kLeft + pw)
      << "\" y2=\"" << coord(py(t)) << "\"/>\n";
  }
  o << "</g>\n";

  o << "<g stroke=\"black\" stroke-width=\"1.5\">\n"
    << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop + ph) << "\" x2=\"" << coord(kLeft + pw)
    << "\" y2=\"" << coord(kTop + ph) << "\"/>\n"
    << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop) << "\" x2=\"" << coord(kLeft) << "\" y2=\""
    << coord(kTop + ph) << "\"/>\n</g>\n";

  o << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (double t = ax.lo; t <= ax.hi + ax.step * 1e-9; t += ax.step) {
    o << "<text x=\"" << coord(px(t)) << "\" y=\"" << coord(kTop + ph + 18) << "\" text-anchor=\"middle\">"
      << fmt(std::fabs(t) < ax.step * 1e-9 ? 0.0 : t) << "</text>\n";
  }
  for (double t = ay.lo; t <= ay.hi + ay.step * 1e-9; t += ay.step) {
    o << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(py(t) + 4) << "\" text-anchor=\"end\">"
      << fmt(std::fabs(t) < ay.step * 1e-9 ? 0.0 : t) << "</text>\n";
  }
  o << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"" << coord(kHeight - 20)
    << "\" text-anchor=\"middle\" font-size=\"14\">N</text>\n"
    << "<text x=\"20\" y=\"" << coord(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"14\" "
    << "transform=\"rotate(-90 20 " << coord(kTop + ph / 2) << ")\">percentage error</text>\n</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % (sizeof kColors / sizeof kColors[0])];
    if (s.points.size() == 1) {
      o << "<circle cx=\"" << coord(px(s.points[0].first)) << "\" cy=\"" << coord(py(s.points[0].second))
        << "\" r=\"5\" fill=\"" << color << "\"/>\n";
    } else if (!s.points.empty()) {
      auto pts = s.points;
      std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t k = 0; k < pts.size(); ++k) {
        o << (k ? " " : "") << coord(px(pts[k].first)) << ',' << coord(py(pts[k].second));
      }
      o << "\"/>\n";
    }
    const double ly = kTop + 10 + 22.0 * static_cast<double>(i);
    o << "<line x1=\"" << coord(kLeft + pw + 20) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(kLeft + pw + 45)
      << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << coord(kLeft + pw + 52) << "\" y=\"" << coord(ly + 4)
      << "\" font-family=\"sans-serif\" font-size=\"12\">beta = " << escape(s.beta) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace hankel
