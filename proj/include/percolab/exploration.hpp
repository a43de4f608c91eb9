#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "percolab/error.hpp"
#include "percolab/hexlattice.hpp"
#include "percolab/percolation.hpp"

namespace percolab {

/// An edge of the hexagonal lattice traversed with hexagon `left()` on its
/// left and `right` on its right.
struct DirectedEdge {
  HexCoord right;
  int dir = 0;  ///< left() == neighbor(right, dir)

  HexCoord left() const { return neighbor(right, dir); }
  Vertex tail() const { return corner(right, dir); }
  Vertex head() const { return corner(right, dir - 1); }
  /// The third hexagon at the head vertex.
  HexCoord wedge() const { return neighbor(right, dir - 1); }
  DirectedEdge reversed() const { return {left(), wrap6(dir + 3)}; }

  friend constexpr auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

/// Edge with `left` on its left and `right` on its right; the hexagons must be adjacent.
DirectedEdge edge_between(HexCoord left, HexCoord right);

/// One step of the exploration: the wedge hexagon at the head decides the
/// turn so that Yellow stays on the left and Blue on the right.
template <class ColorOf>
DirectedEdge advance(const DirectedEdge& e, ColorOf&& color_of) {
  const HexCoord w = e.wedge();
  if (color_of(w) == Color::Yellow) return {e.right, wrap6(e.dir - 1)};
  return {w, wrap6(e.dir + 1)};
}

struct LatticePath {
  double mesh = 1.0;
  std::vector<DirectedEdge> edges;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  /// Tail of the first edge followed by the head of every edge.
  std::vector<Vertex> vertices() const;
  std::vector<Point> points() const;

  friend bool operator==(const LatticePath& a, const LatticePath& b) { return a.edges == b.edges; }
};

/// Chordal exploration from boundary position x to boundary position y.
///
/// Uses the coloring's pretend colors when present (they must be Blue on
/// [x, y) and Yellow on [y, x)); otherwise assigns exactly those.  The path
/// starts on the edge between boundary hexagons x-1 and x and ends on the one
/// between y and y-1.
LatticePath explore_chordal(const Coloring& c, int x, int y);

/// Hexagons on either side of the path that belong to the domain.
std::vector<HexCoord> fatten(const LatticePath& path, const LatticeDomain& d);
/// As above restricted to the first `t` edges.
std::vector<HexCoord> fatten_prefix(const LatticePath& path, std::size_t t, const LatticeDomain& d);

/// Index of the first edge with a hexagon of `arc` on either side, or path.size().
std::size_t first_touch(const LatticePath& path, std::span<const HexCoord> arc);

struct LatticeHull {
  std::vector<HexCoord> explored;      ///< fattened prefix
  std::vector<HexCoord> disconnected;  ///< cut off from the target by the prefix
  std::size_t time_index = 0;

  std::vector<HexCoord> all() const;
};

/// Lattice hull of the first t edges: the fattened prefix plus every domain
/// hexagon no longer connected (inside the domain) to the hexagons adjacent
/// to boundary position b.
LatticeHull fill_hull(const Coloring& c, const LatticePath& path, std::size_t t, int b);

struct SubdomainComponent {
  std::shared_ptr<const LatticeDomain> domain;
  int type = 0;  ///< 1..4
  bool mixed = false;
  /// For mixed components: positions (x', y') on the component boundary where
  /// the realized colors switch Yellow->Blue and Blue->Yellow.
  std::optional<std::pair<int, int>> color_change;
};

struct SubdomainReport {
  std::vector<SubdomainComponent> components;
};

/// Realized colors along the boundary loop of `sub`, with hexagons outside
/// `c`'s domain colored `outer`.
std::vector<Color> realized_boundary(const Coloring& c, const LatticeDomain& sub, Color outer);

/// Color-change positions of a boundary color cycle with exactly two changes.
std::optional<std::pair<int, int>> two_arc_split(std::span<const Color> cycle);

/// Components of the unexplored hexagons after removing the fattened path,
/// typed by adjacency: (1) fattened path and arc y->x; (2) fattened path and
/// arc x->y; (3) Yellow fattened hexagons only; (4) Blue fattened hexagons
/// only.  `outer` is the realized color of hexagons outside the domain.
/// Throws AmbiguousComponent when none of the patterns apply.
SubdomainReport classify_components(const Coloring& c, const LatticePath& path, int x, int y,
                                    Color outer = Color::Blue);

/// Smallest vertex index whose three incident hexagons are not all in `region`
/// (sorted hexagon list); path.size() if the path never leaves.
std::size_t first_exit(const LatticePath& path, std::span<const HexCoord> region);
/// Smallest vertex index strictly outside the disc; path.size() if none.
std::size_t first_exit(const LatticePath& path, Point disc_center, double radius);

// Exploration of the half-plane lattice: hexagons with r >= 0 are sites, the
// row r = -1 carries pretend colors Yellow for q < 0 and Blue for q >= 0.

/// The first edge, between boundary hexagons (-1,-1) and (0,-1).
DirectedEdge half_plane_start_edge();
/// Embedded head vertex of the start edge; subtracting it puts the
/// exploration's origin at 0 with all vertices in the closed upper half-plane.
Point half_plane_origin(double mesh);
/// Mirror image across the vertical line through the origin.
HexCoord half_plane_mirror(HexCoord c);

/// Runs the half-plane exploration with `site_color` for r >= 0 until
/// `stop(edges)` returns true or `max_steps` edges were produced.
std::vector<DirectedEdge> explore_half_plane(const std::function<Color(HexCoord)>& site_color,
                                             const std::function<bool(const std::vector<DirectedEdge>&)>& stop,
                                             std::size_t max_steps);

nlohmann::json path_to_json(const LatticePath& path);
nlohmann::json hull_to_json(const LatticeHull& hull);

}  // namespace percolab
