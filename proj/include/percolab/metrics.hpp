#pragma once

// Parametrization-free distances between curves, loops and loop collections.

#include <complex>
#include <vector>

namespace percolab {

using Point = std::complex<double>;

struct PolyCurve {
  std::vector<Point> points;
  bool closed = false;
};

/// Discrete Frechet distance: the smallest leash length over monotone
/// couplings of the two vertex sequences.
double curve_distance(const std::vector<Point>& a, const std::vector<Point>& b);

/// Minimum of curve_distance over the starting vertex and orientation of `b`,
/// with both loops opened and closed back at their start.
double loop_distance(const std::vector<Point>& a, const std::vector<Point>& b);

/// Hausdorff distance between loop collections under loop_distance.  The
/// distance between an empty and a nonempty collection is the diameter of the
/// bounding box of the nonempty one; two empty collections are at distance 0.
double ensemble_distance(const std::vector<std::vector<Point>>& a, const std::vector<std::vector<Point>>& b);

/// Distance between two domains given by closed boundary polylines.
double domain_distance(const std::vector<Point>& boundary_a, const std::vector<Point>& boundary_b);

/// Dispatches on PolyCurve::closed (both curves must agree).
double distance(const PolyCurve& a, const PolyCurve& b);

}  // namespace percolab
