#include "percolab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "percolab/error.hpp"

namespace percolab {

double curve_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::ConfigError, "curves need at least one point");
  const std::size_t m = b.size();
  std::vector<double> row(m), prev(m);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = std::abs(a[i] - b[j]);
      double reach;
      if (i == 0 && j == 0) reach = d;
      else if (i == 0) reach = row[j - 1];
      else if (j == 0) reach = prev[0];
      else reach = std::min({prev[j], prev[j - 1], row[j - 1]});
      row[j] = std::max(reach, d);
    }
    std::swap(row, prev);
  }
  return prev[m - 1];
}

namespace {

std::vector<Point> opened(const std::vector<Point>& loop, std::size_t start, bool reverse) {
  const std::size_t n = loop.size();
  std::vector<Point> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t i = reverse ? (start + n - k % n) % n : (start + k) % n;
    out.push_back(loop[i]);
  }
  return out;
}

double bbox_diameter(const std::vector<std::vector<Point>>& loops) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  for (const auto& l : loops) {
    for (const auto& p : l) {
      x0 = std::min(x0, p.real());
      x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag());
      y1 = std::max(y1, p.imag());
    }
  }
  return x1 < x0 ? 0.0 : std::hypot(x1 - x0, y1 - y0);
}

double directed_hausdorff(const std::vector<std::vector<Point>>& from, const std::vector<std::vector<Point>>& to) {
  double worst = 0.0;
  for (const auto& l : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : to) best = std::min(best, loop_distance(l, r));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double loop_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::ConfigError, "loops need at least one point");
  const std::vector<Point> open_a = opened(a, 0, false);
  // Every coupling pairs a[0] with the start b[s], so |a[0] - b[s]| bounds that start from below.
  std::vector<std::pair<double, std::size_t>> starts(b.size());
  for (std::size_t s = 0; s < b.size(); ++s) starts[s] = {std::abs(a[0] - b[s]), s};
  std::sort(starts.begin(), starts.end());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [bound, s] : starts) {
    if (bound >= best) break;
    for (bool reverse : {false, true}) best = std::min(best, curve_distance(open_a, opened(b, s, reverse)));
  }
  return best;
}

double ensemble_distance(const std::vector<std::vector<Point>>& a, const std::vector<std::vector<Point>>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty()) return bbox_diameter(b);
  if (b.empty()) return bbox_diameter(a);
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double domain_distance(const std::vector<Point>& boundary_a, const std::vector<Point>& boundary_b) {
  return loop_distance(boundary_a, boundary_b);
}

double distance(const PolyCurve& a, const PolyCurve& b) {
  if (a.closed != b.closed) throw Error(ErrorCode::ConfigError, "cannot compare a loop with an open curve");
  return a.closed ? loop_distance(a.points, b.points) : curve_distance(a.points, b.points);
}

}  // namespace percolab
