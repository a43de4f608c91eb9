#include <algorithm>
#include <queue>
#include <set>

#include "percolab/exploration.hpp"
#include "support.hpp"

using namespace percolab;

namespace {

std::set<HexCoord> as_set(const std::vector<HexCoord>& v) { return {v.begin(), v.end()}; }

// Interface property: Yellow on the left, Blue on the right, edges chained
// head to tail, no edge repeated.
void check_interface(const Coloring& c, const LatticePath& p) {
  std::set<std::pair<Vertex, Vertex>> seen;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& e = p.edges[i];
    CHECK(c.at(e.left()) == Color::Yellow);
    CHECK(c.at(e.right) == Color::Blue);
    if (i + 1 < p.size()) CHECK(e.head() == p.edges[i + 1].tail());
    CHECK(seen.insert({e.tail(), e.head()}).second);
  }
}

}  // namespace

TEST_CASE("single Yellow hexagon: the path wraps its Blue side") {
  const auto d = build_domain({{0, 0}}, 1.0);
  const Coloring c(d, {Color::Yellow});
  const LatticePath p = explore_chordal(c, 0, 3);
  // Boundary (-1,0) (0,-1) (1,-1) are Blue, (1,0) (0,1) (-1,1) Yellow.
  const std::vector<DirectedEdge> expected = {
      edge_between({-1, 1}, {-1, 0}), edge_between({0, 0}, {-1, 0}), edge_between({0, 0}, {0, -1}),
      edge_between({0, 0}, {1, -1}), edge_between({1, 0}, {1, -1})};
  CHECK(p.edges == expected);
  check_interface(c.with_arcs(0, 3), p);
  CHECK(p == explore_chordal(c, 0, 3));
  CHECK(p.vertices().size() == 6);

  CHECK(fatten(p, *d) == std::vector<HexCoord>{{0, 0}});
  CHECK(fatten(LatticePath{}, *d).empty());

  // The start vertex touches (-1,0), (-1,1), (-2,1); the next one touches (0,0).
  const std::vector<HexCoord> start_hexes = {{-2, 1}, {-1, 0}, {-1, 1}};
  CHECK(first_exit(p, start_hexes) == 1);
  auto everything = hexagon_hexes(5);
  std::sort(everything.begin(), everything.end());
  CHECK(first_exit(p, everything) == p.size());
}

TEST_CASE("exploration against Blue crossings on every 3x3 rhombus coloring") {
  const auto d = build_domain(rhombus_hexes(3, 3), 1.0);
  const int n = static_cast<int>(d->boundary().size());
  const int z1 = 0, z2 = n / 4, z3 = n / 2, z4 = 3 * n / 4;
  const auto a12 = boundary_arcs(*d, z1, z2).xy, a23 = boundary_arcs(*d, z2, z3).xy;
  const auto a34 = boundary_arcs(*d, z3, z4).xy;
  for (std::uint64_t mask = 0; mask < 512; ++mask) {
    const Coloring c = testing::from_mask(d, mask);
    const LatticePath p = explore_chordal(c, z1, z3);
    check_interface(c.with_arcs(z1, z3), p);
    const bool far_first = first_touch(p, a34) < first_touch(p, a23);
    CHECK(far_first == has_crossing(c, a12, a34, Color::Blue));
  }
}

TEST_CASE("fattened hexagons touch the path") {
  const auto d = build_domain(rhombus_hexes(8, 8), 1.0);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Coloring c = sample_coloring(d, 0.5, s);
    const LatticePath p = explore_chordal(c, 3, 17);
    check_interface(c.with_arcs(3, 17), p);
    for (auto h : fatten(p, *d)) {
      CHECK(d->contains(h));
      const bool touches = std::any_of(p.edges.begin(), p.edges.end(),
                                       [&](const DirectedEdge& e) { return e.left() == h || e.right == h; });
      CHECK(touches);
    }
    // first_exit is monotone in the region.
    const auto small = hexagon_hexes(3), large = hexagon_hexes(6);
    std::vector<HexCoord> ss(small), ls(large);
    std::sort(ss.begin(), ss.end());
    std::sort(ls.begin(), ls.end());
    CHECK(first_exit(p, ss) <= first_exit(p, ls));
  }
}

TEST_CASE("lattice hulls") {
  const auto d = build_domain(rhombus_hexes(8, 8), 1.0);
  const int b = 17;
  SUBCASE("t = 0 gives an empty hull") {
    const Coloring c = sample_coloring(d, 0.5, 1);
    CHECK(fill_hull(c, explore_chordal(c, 3, b), 0, b).all().empty());
  }
  SUBCASE("an interface along the boundary encloses nothing") {
    const Coloring c = uniform_coloring(d, Color::Blue);
    const LatticePath p = explore_chordal(c, 3, b);
    for (std::size_t t = 0; t <= p.size(); ++t) {
      const LatticeHull h = fill_hull(c, p, t, b);
      CHECK(h.disconnected.empty());
      CHECK(as_set(h.explored) == as_set(fatten_prefix(p, t, *d)));
    }
  }
  SUBCASE("disconnected hexagons are exactly those cut off from the target") {
    std::size_t pockets = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      const Coloring c = sample_coloring(d, 0.5, s);
      const LatticePath p = explore_chordal(c, 3, b);
      const std::size_t t = p.size() / 2;
      const LatticeHull h = fill_hull(c, p, t, b);
      const auto explored = as_set(fatten_prefix(p, t, *d));
      CHECK(as_set(h.explored) == explored);
      // Breadth-first search from the hexagons next to position b.
      std::set<HexCoord> reach;
      std::queue<HexCoord> todo;
      const int n = static_cast<int>(d->boundary().size());
      for (HexCoord g : {d->boundary()[b], d->boundary()[(b - 1 + n) % n]}) {
        for (auto nb : hex_neighbors(g)) {
          if (d->contains(nb) && !explored.count(nb) && reach.insert(nb).second) todo.push(nb);
        }
      }
      while (!todo.empty()) {
        const HexCoord x = todo.front();
        todo.pop();
        for (auto nb : hex_neighbors(x)) {
          if (d->contains(nb) && !explored.count(nb) && reach.insert(nb).second) todo.push(nb);
        }
      }
      std::set<HexCoord> cut;
      for (auto x : d->hexes()) {
        if (!explored.count(x) && !reach.count(x)) cut.insert(x);
      }
      CHECK(as_set(h.disconnected) == cut);
      pockets += !cut.empty();
    }
    CHECK(pockets > 0);
  }
}

TEST_CASE("two-stripe coloring leaves one component on each side") {
  const int L = 6;
  const auto d = build_domain(rhombus_hexes(L, L), 1.0);
  std::vector<Color> colors(d->size());
  for (std::size_t i = 0; i < d->size(); ++i) colors[i] = d->hexes()[i].q < 3 ? Color::Yellow : Color::Blue;
  const Coloring c(d, colors);
  const int x = d->boundary_index({3, -1});
  const int y = d->boundary_index({2, L});
  REQUIRE(x >= 0);
  REQUIRE(y >= 0);
  const LatticePath p = explore_chordal(c, x, y);
  check_interface(c.with_arcs(x, y), p);
  const auto report = classify_components(c.with_arcs(x, y), p, x, y);
  REQUIRE(report.components.size() == 2);
  for (const auto& comp : report.components) {
    // Columns 0-1 lie beyond the Yellow fattened column, 4-5 beyond the Blue one.
    const bool west = comp.domain->hexes().front().q < 3;
    CHECK(comp.type == (west ? 1 : 2));
    CHECK(comp.domain->size() == 2u * L);
    for (auto h : comp.domain->hexes()) CHECK((west ? h.q < 2 : h.q > 3));
  }
}

TEST_CASE("single hexagon domain has no components after exploration") {
  const auto d = build_domain({{0, 0}}, 1.0);
  for (Color col : {Color::Blue, Color::Yellow}) {
    const Coloring c = Coloring(d, {col}).with_arcs(0, 3);
    CHECK(classify_components(c, explore_chordal(c, 0, 3), 0, 3).components.empty());
  }
}

TEST_CASE("component classification is a partition of the unexplored hexagons") {
  const auto d = build_domain(rhombus_hexes(7, 7), 1.0);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Coloring c = sample_coloring(d, 0.5, s).with_arcs(2, 15);
    const LatticePath p = explore_chordal(c, 2, 15);
    const auto fat = as_set(fatten(p, *d));
    std::size_t covered = 0;
    for (const auto& comp : classify_components(c, p, 2, 15).components) {
      CHECK(comp.type >= 1);
      CHECK(comp.type <= 4);
      CHECK(comp.domain->lattice_jordan());
      CHECK(comp.mixed == comp.color_change.has_value());
      for (auto h : comp.domain->hexes()) CHECK_FALSE(fat.count(h));
      covered += comp.domain->size();
    }
    CHECK(covered + fat.size() == d->size());
  }
}

TEST_CASE("two-arc split of a boundary color cycle") {
  using C = Color;
  const std::vector<Color> cycle = {C::Blue, C::Blue, C::Yellow, C::Yellow, C::Yellow, C::Blue};
  const auto split = two_arc_split(cycle);
  REQUIRE(split.has_value());
  CHECK(*split == std::pair<int, int>{5, 2});
  CHECK_FALSE(two_arc_split(std::vector<Color>(4, C::Blue)).has_value());
  CHECK_FALSE(two_arc_split(std::vector<Color>{C::Blue, C::Yellow, C::Blue, C::Yellow}).has_value());
}

TEST_CASE("half-plane exploration") {
  CHECK(half_plane_mirror(half_plane_mirror({3, 2})) == HexCoord{3, 2});
  CHECK(half_plane_mirror({3, 2}).r == 2);
  const Point origin = half_plane_origin(1.0);
  CHECK(std::abs(embed(half_plane_start_edge().head(), 1.0) - origin) < 1e-12);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto color = [&](HexCoord h) { return site_color(seed, h, 0.5); };
    const auto edges = explore_half_plane(color, [](const auto& e) { return e.size() >= 500; }, 500);
    REQUIRE(edges.size() == 500);
    CHECK(edges.front() == half_plane_start_edge());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      CHECK((embed(edges[i].head(), 1.0) - origin).imag() >= -1e-12);
      if (i + 1 < edges.size()) CHECK(edges[i].head() == edges[i + 1].tail());
    }
    // Mirrored and color-swapped sites give the mirrored path.
    auto mirrored = [&](HexCoord h) { return flip(site_color(seed, half_plane_mirror(h), 0.5)); };
    const auto back = explore_half_plane(mirrored, [](const auto& e) { return e.size() >= 500; }, 500);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Point a = embed(edges[i].head(), 1.0) - origin, m = embed(back[i].head(), 1.0) - origin;
      CHECK(std::abs(a + std::conj(m)) < 1e-9);
    }
  }
}

TEST_CASE("path serialization") {
  const auto d = build_domain({{0, 0}}, 0.5);
  const LatticePath p = explore_chordal(Coloring(d, {Color::Yellow}), 0, 3);
  const auto j = path_to_json(p);
  CHECK(j.at("points").size() == p.size() + 1);
  CHECK(j.at("mesh") == 0.5);
}
