#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace hankel {

/// Percentage-error points of one beta, in file order.
struct PctSeries {
  std::string beta;
  std::vector<std::pair<double, double>> points;  // (N, pct_error)
};

/// Reads a table1 CSV. Rows without a pct_error (failed cells) are skipped.
/// Throws IoError naming the offending line for malformed input.
std::vector<PctSeries> read_pct_csv(std::istream& in);

/// 800x600 standalone SVG: one polyline per beta (a single marker when a
/// series has one point), axes with tick labels, and a legend. Output
/// depends only on the input. Throws DomainError when there are no points.
std::string render_pct_svg(const std::vector<PctSeries>& series);

}  // namespace hankel
