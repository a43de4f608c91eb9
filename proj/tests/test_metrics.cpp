#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "percolab/loop_ensemble.hpp"
#include "percolab/metrics.hpp"
#include "support.hpp"

using namespace percolab;

namespace {

// Minimum over all monotone couplings of the maximal leash, by enumeration.
double brute_force_frechet(const std::vector<Point>& a, const std::vector<Point>& b) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double worst) {
    worst = std::max(worst, std::abs(a[i] - b[j]));
    if (i + 1 == a.size() && j + 1 == b.size()) {
      best = std::min(best, worst);
      return;
    }
    if (i + 1 < a.size()) walk(i + 1, j, worst);
    if (j + 1 < b.size()) walk(i, j + 1, worst);
    if (i + 1 < a.size() && j + 1 < b.size()) walk(i + 1, j + 1, worst);
  };
  walk(0, 0, 0.0);
  return best;
}

std::vector<Point> regular_polygon(int n, double radius, Point c = 0.0, double phase = 0.0) {
  std::vector<Point> p;
  for (int k = 0; k < n; ++k) p.push_back(c + std::polar(radius, phase + 2 * std::numbers::pi * k / n));
  return p;
}

std::vector<Point> random_curve(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> p(n);
  for (auto& x : p) x = Point(u(rng), u(rng));
  return p;
}

}  // namespace

TEST_CASE("curve distance") {
  const std::vector<Point> seg = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
  CHECK(curve_distance(seg, seg) == 0.0);
  const Point v(0.3, -0.4);
  std::vector<Point> moved(seg);
  for (auto& p : moved) p += v;
  CHECK(curve_distance(seg, moved) == doctest::Approx(std::abs(v)));

  const std::vector<Point> a = {{0, 0}, {1, 1}, {2, 0}};
  const std::vector<Point> b = {{0, 0.5}, {2, 0.5}, {1.5, -1}};
  CHECK(curve_distance(a, b) == doctest::Approx(brute_force_frechet(a, b)));
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_curve(rng, 2 + trial % 5), y = random_curve(rng, 2 + trial % 4);
    CHECK(curve_distance(x, y) == doctest::Approx(brute_force_frechet(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("loop distance") {
  const auto hex = regular_polygon(6, 1.0, Point(0.2, 0.1));
  std::vector<Point> rotated(hex.begin() + 2, hex.end());
  rotated.insert(rotated.end(), hex.begin(), hex.begin() + 2);
  CHECK(loop_distance(hex, rotated) == doctest::Approx(0.0));
  const std::vector<Point> reversed(hex.rbegin(), hex.rend());
  CHECK(loop_distance(hex, reversed) == doctest::Approx(0.0));
  CHECK(domain_distance(hex, hex) == 0.0);
  const double eps = 0.05;
  const auto scaled = regular_polygon(6, 1.0 + eps, Point(0.2, 0.1));
  CHECK(std::abs(loop_distance(hex, scaled) - eps) <= 1e-9);
}

TEST_CASE("loop distance against every start and orientation") {
  std::mt19937_64 rng(5);
  auto closed = [](std::vector<Point> p, std::size_t s, bool reverse) {
    std::rotate(p.begin(), p.begin() + s, p.end());
    if (reverse) std::reverse(p.begin() + 1, p.end());
    p.push_back(p.front());
    return p;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_curve(rng, 3 + trial % 5), b = random_curve(rng, 3 + trial % 7);
    double expected = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < b.size(); ++s) {
      for (bool reverse : {false, true}) {
        expected = std::min(expected, curve_distance(closed(a, 0, false), closed(b, s, reverse)));
      }
    }
    CHECK(loop_distance(a, b) == expected);
  }
}

TEST_CASE("ensemble distance") {
  const std::vector<std::vector<Point>> e = {regular_polygon(6, 1.0), regular_polygon(8, 0.5, Point(3, 0))};
  CHECK(ensemble_distance(e, e) == 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double eps = 0.01;
  auto perturbed = e;
  for (auto& loop : perturbed) {
    for (auto& p : loop) p += std::polar(eps * std::abs(u(rng)), std::numbers::pi * u(rng));
  }
  CHECK(ensemble_distance(e, perturbed) <= eps);

  // Two loops against one: Hausdorff over the 2x1 assignment.
  const std::vector<std::vector<Point>> one = {regular_polygon(6, 1.2)};
  const double d0 = loop_distance(e[0], one[0]), d1 = loop_distance(e[1], one[0]);
  CHECK(ensemble_distance(e, one) == doctest::Approx(std::max(std::max(d0, d1), std::min(d0, d1))));
  CHECK(ensemble_distance(one, e) == doctest::Approx(ensemble_distance(e, one)));

  CHECK(ensemble_distance({}, {}) == 0.0);
  // Bounding box of the nonempty one: [-1, 3.5] x [-sin 60, sin 60].
  const double h = std::sqrt(3.0);
  CHECK(ensemble_distance({}, e) == doctest::Approx(std::hypot(4.5, h)));
}

TEST_CASE("concentric circles") {
  const double eps = 0.01;
  const double d = domain_distance(regular_polygon(360, 1.0), regular_polygon(360, 1.0 + eps));
  CHECK(d >= eps * (1 - 1e-3));
  CHECK(d <= eps * (1 + 1e-3));
}

TEST_CASE("lattice approximation of the unit disc converges at rate mesh") {
  const auto circle = regular_polygon(4000, 1.0);
  double previous = std::numeric_limits<double>::infinity();
  for (int inv : {10, 20, 40}) {
    const double mesh = 1.0 / inv;
    const auto dom = build_domain(disc_hexes(inv), mesh);
    // The outer contour of the all-Yellow coloring is the domain boundary.
    const LoopEnsemble e = extract_loops_direct(uniform_coloring(dom, Color::Yellow));
    REQUIRE(e.size() == 1);
    const double d = domain_distance(e.loops[0].points(), circle);
    CHECK(d <= 2.0 * mesh);
    CHECK(d < previous);
    previous = d;
  }
}

TEST_CASE("triangle inequality") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_curve(rng, 3 + trial % 6), b = random_curve(rng, 3 + trial % 5),
               c = random_curve(rng, 3 + trial % 7);
    CHECK(curve_distance(a, c) <= curve_distance(a, b) + curve_distance(b, c) + 1e-12);
  }
}

TEST_CASE("distance dispatch") {
  const PolyCurve a{regular_polygon(5, 1.0), true}, b{regular_polygon(5, 1.0, 0.0, 0.4), true};
  CHECK(distance(a, b) == doctest::Approx(loop_distance(a.points, b.points)));
  const PolyCurve open_a{a.points, false}, open_b{b.points, false};
  CHECK(distance(open_a, open_b) == doctest::Approx(curve_distance(a.points, b.points)));
  CHECK_THROWS(distance(a, open_b));
}
