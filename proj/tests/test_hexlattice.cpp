#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "percolab/hexlattice.hpp"
#include "support.hpp"

using namespace percolab;

TEST_CASE("neighbors of the origin follow the axial convention") {
  const auto n = hex_neighbors({0, 0});
  const std::array<HexCoord, 6> expected = {
      HexCoord{1, 0}, HexCoord{0, 1}, HexCoord{-1, 1}, HexCoord{-1, 0}, HexCoord{0, -1}, HexCoord{1, -1}};
  CHECK(n == expected);
  for (int k = 0; k < 6; ++k) CHECK(direction_to({0, 0}, n[k]) == k);
  CHECK(direction_to({0, 0}, {2, 0}) == -1);
}

TEST_CASE("neighbor relation is symmetric") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coord(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const HexCoord a{coord(rng), coord(rng)};
    const HexCoord b = trial % 2 ? neighbor(a, trial % 6) : HexCoord{coord(rng), coord(rng)};
    const auto na = hex_neighbors(a), nb = hex_neighbors(b);
    const bool b_in_a = std::find(na.begin(), na.end(), b) != na.end();
    const bool a_in_b = std::find(nb.begin(), nb.end(), a) != nb.end();
    CHECK(b_in_a == a_in_b);
  }
}

TEST_CASE("adjacent hexagons share exactly two neighbors") {
  for (int k = 0; k < 6; ++k) {
    const HexCoord a{3, -2};
    const HexCoord b = neighbor(a, k);
    const auto na = hex_neighbors(a), nb = hex_neighbors(b);
    int common = 0;
    for (auto x : na) common += std::count(nb.begin(), nb.end(), x);
    CHECK(common == 2);
  }
}

TEST_CASE("corners are shared by the three hexagons around them") {
  const HexCoord c{2, -1};
  for (int k = 0; k < 6; ++k) {
    const auto inc = incident_hexes(corner(c, k));
    const std::set<HexCoord> got(inc.begin(), inc.end());
    const std::set<HexCoord> expected = {c, neighbor(c, k), neighbor(c, k + 1)};
    CHECK(got == expected);
    const Point p = embed(corner(c, k), 0.5);
    const Point q = center(c, 0.5) + std::polar(0.5, std::numbers::pi / 6 + k * std::numbers::pi / 3);
    CHECK(std::abs(p - q) < 1e-12);
  }
}

TEST_CASE("center embedding") {
  CHECK(std::abs(center({1, 0}, 1.0) - Point(std::sqrt(3.0), 0)) < 1e-12);
  CHECK(std::abs(center({0, 1}, 2.0) - Point(std::sqrt(3.0), 3.0)) < 1e-12);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(std::abs(center(kDirections[k], 1.0)) - std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("single hexagon domain") {
  const auto d = build_domain({{0, 0}}, 1.0);
  CHECK(d->connected());
  CHECK(d->simply_connected());
  CHECK(d->lattice_jordan());
  const std::vector<HexCoord> expected = {{-1, 0}, {0, -1}, {1, -1}, {1, 0}, {0, 1}, {-1, 1}};
  CHECK(d->boundary() == expected);
  for (int i = 0; i < 6; ++i) CHECK(d->boundary_index(expected[i]) == i);
}

TEST_CASE("two edge-sharing hexagons have an 8-hexagon boundary loop") {
  const auto d = build_domain({{0, 0}, {1, 0}}, 1.0);
  CHECK(d->lattice_jordan());
  REQUIRE(d->boundary().size() == 8);
  const std::set<HexCoord> got(d->boundary().begin(), d->boundary().end());
  std::set<HexCoord> expected;
  for (HexCoord h : {HexCoord{0, 0}, HexCoord{1, 0}}) {
    for (auto n : hex_neighbors(h)) {
      if (!d->contains(n)) expected.insert(n);
    }
  }
  CHECK(got == expected);
  // Consecutive boundary hexagons are adjacent, closing up into a loop.
  for (std::size_t i = 0; i < 8; ++i) CHECK(direction_to(d->boundary()[i], d->boundary()[(i + 1) % 8]) >= 0);
}

TEST_CASE("ring around an excluded center is not simply connected") {
  std::vector<HexCoord> ring(kDirections.begin(), kDirections.end());
  const auto d = build_domain(ring, 1.0);
  CHECK(d->connected());
  CHECK_FALSE(d->simply_connected());
  CHECK_FALSE(d->lattice_jordan());
  CHECK(d->boundary().empty());
  CHECK_ERROR_CODE(boundary_arcs(*d, 0, 1), NotJordan);
}

TEST_CASE("disconnected sets are not lattice-Jordan") {
  const auto d = build_domain({{0, 0}, {3, 0}}, 1.0);
  CHECK_FALSE(d->connected());
  CHECK_FALSE(d->lattice_jordan());
}

TEST_CASE("empty domain is rejected") { CHECK_ERROR_CODE(build_domain({}, 1.0), EmptyDomain); }

TEST_CASE("boundary arcs") {
  const auto one = build_domain({{0, 0}}, 1.0);
  const auto half = boundary_arcs(*one, 0, 3);
  CHECK(half.xy.size() == 3);
  CHECK(half.yx.size() == 3);

  const auto two = build_domain({{0, 0}, {1, 0}}, 1.0);
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      if (x == y) {
        CHECK_ERROR_CODE(boundary_arcs(*two, x, y), CoincidentSplitPoints);
        continue;
      }
      const auto arcs = boundary_arcs(*two, x, y);
      std::vector<HexCoord> joined = arcs.xy;
      joined.insert(joined.end(), arcs.yx.begin(), arcs.yx.end());
      std::rotate(joined.begin(), joined.end() - (x % 8), joined.end());
      CHECK(joined == two->boundary());
    }
  }
  const auto adjacent = boundary_arcs(*two, 2, 3);
  CHECK(adjacent.xy.size() == 1);
  CHECK(adjacent.yx.size() == 7);
  CHECK(adjacent.xy[0] == two->boundary()[2]);
  CHECK_ERROR_CODE(boundary_arcs(*two, 0, 8), BadSplitPoints);
  CHECK_ERROR_CODE(boundary_arcs(*two, -1, 2), BadSplitPoints);
}

TEST_CASE("cyclic range wraps") {
  CHECK(cyclic_range(4, 1, 6) == std::vector<int>{4, 5, 0});
  CHECK(cyclic_range(1, 4, 6) == std::vector<int>{1, 2, 3});
}

TEST_CASE("shape generators") {
  CHECK(rhombus_hexes(3, 4).size() == 12);
  CHECK(hexagon_hexes(2).size() == 19);
  for (auto h : disc_hexes(5.5)) CHECK(std::abs(center(h, 1.0)) <= 5.5);
  CHECK(build_domain(disc_hexes(10.0), 1.0)->lattice_jordan());
  CHECK(build_domain(rhombus_hexes(5, 5), 1.0)->lattice_jordan());
  CHECK(hex_distance({0, 0}, {2, -1}) == 2);
  CHECK(hex_distance({0, 0}, {-3, 3}) == 3);
}

TEST_CASE("polyhex enumeration matches the known counts") {
  // Fixed and free polyhex counts for sizes 1..7.
  const int fixed[] = {1, 3, 11, 44, 186, 814, 3652};
  const int free_[] = {1, 1, 3, 7, 22, 82, 333};
  for (int n = 1; n <= 7; ++n) {
    CHECK(enumerate_polyhexes(n, false).size() == static_cast<std::size_t>(fixed[n - 1]));
    CHECK(enumerate_polyhexes(n, true).size() == static_cast<std::size_t>(free_[n - 1]));
  }
}

TEST_CASE("random Jordan polyhexes") {
  for (int size : {1, 5, 12}) {
    const auto a = random_jordan_polyhex(size, 42);
    CHECK(a.size() == static_cast<std::size_t>(size));
    CHECK(build_domain(a, 1.0)->lattice_jordan());
    CHECK(a == random_jordan_polyhex(size, 42));
  }
}

TEST_CASE("domain JSON round trip") {
  const auto d = build_domain(rhombus_hexes(3, 2), 0.25);
  const auto back = domain_from_json(domain_to_json(*d));
  CHECK(back->hexes() == d->hexes());
  CHECK(back->mesh() == 0.25);
  CHECK(back->boundary() == d->boundary());
}
