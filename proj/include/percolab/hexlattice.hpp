#pragma once

// Geometry of the hexagonal lattice H (sites of the triangular lattice T are
// its hexagons).  Pointy-top hexagons, axial coordinates (q, r), embedding
//   center(q, r) = mesh * (sqrt(3) * (q + r / 2), 1.5 * r),
// circumradius = mesh.

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

namespace percolab {

using Point = std::complex<double>;

struct HexCoord {
  int q = 0;
  int r = 0;

  friend constexpr auto operator<=>(const HexCoord&, const HexCoord&) = default;
  friend constexpr HexCoord operator+(HexCoord a, HexCoord b) { return {a.q + b.q, a.r + b.r}; }
};

/// Neighbor directions in counterclockwise angular order starting east:
/// E(+1,0) NE(0,+1) NW(-1,+1) W(-1,0) SW(0,-1) SE(+1,-1).
/// Direction k points at angle 60k degrees.
inline constexpr std::array<HexCoord, 6> kDirections = {
    HexCoord{1, 0}, HexCoord{0, 1}, HexCoord{-1, 1},
    HexCoord{-1, 0}, HexCoord{0, -1}, HexCoord{1, -1}};

constexpr int wrap6(int k) { return ((k % 6) + 6) % 6; }

constexpr HexCoord neighbor(HexCoord c, int dir) { return c + kDirections[wrap6(dir)]; }

/// The six neighbors of c, in kDirections order.
std::array<HexCoord, 6> hex_neighbors(HexCoord c);

/// Direction index k with a + kDirections[k] == b, or -1 if not adjacent.
int direction_to(HexCoord a, HexCoord b);

Point center(HexCoord c, double mesh);

/// A corner of the hexagonal lattice.  Every lattice vertex is either the top
/// corner of exactly one hexagon (one hexagon below, two above) or the bottom
/// corner of exactly one hexagon (one above, two below); `south` selects which.
struct Vertex {
  int q = 0;
  int r = 0;
  bool south = false;

  friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Corner k of hexagon c, k counterclockwise from the corner at 30 degrees.
/// Corner k is shared by c, neighbor(c, k) and neighbor(c, k + 1).
Vertex corner(HexCoord c, int k);

Point embed(Vertex v, double mesh);

/// The three hexagons meeting at v.
std::array<HexCoord, 3> incident_hexes(Vertex v);

inline std::uint64_t pack(HexCoord c) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.q)) << 32) |
         static_cast<std::uint32_t>(c.r);
}

/// Axis-aligned box in axial coordinates with a dense cell index.
struct HexBox {
  int q0 = 0, r0 = 0, width = 0, height = 0;

  static HexBox around(std::span<const HexCoord> hexes, int pad);

  bool inside(HexCoord c) const {
    return c.q >= q0 && c.r >= r0 && c.q < q0 + width && c.r < r0 + height;
  }
  std::size_t cell(HexCoord c) const {
    return static_cast<std::size_t>(c.r - r0) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c.q - q0);
  }
  HexCoord coord(std::size_t cell) const {
    return {q0 + static_cast<int>(cell % static_cast<std::size_t>(width)),
            r0 + static_cast<int>(cell / static_cast<std::size_t>(width))};
  }
  std::size_t size() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
};

/// A finite set of hexagons of mesh*H with its boundary structure.
///
/// Immutable once built.  `boundary()` is the T-loop of hexagons adjacent to
/// the domain, listed counterclockwise starting from the lexicographically
/// smallest (q, r); it is only populated for lattice-Jordan domains.
/// Boundary positions are indices into that list; position x denotes the
/// point on the boundary between hexagon x-1 and hexagon x.
class LatticeDomain {
 public:
  double mesh() const { return mesh_; }
  std::size_t size() const { return hexes_.size(); }
  /// Hexagons in lexicographic (q, r) order; this is the canonical order.
  const std::vector<HexCoord>& hexes() const { return hexes_; }
  const std::vector<HexCoord>& boundary() const { return boundary_; }

  bool connected() const { return connected_; }
  bool simply_connected() const { return simply_connected_; }
  bool lattice_jordan() const { return jordan_; }

  bool contains(HexCoord c) const { return index_of(c) >= 0; }
  /// Canonical index of c in hexes(), or -1.
  int index_of(HexCoord c) const {
    return box_.inside(c) ? index_[box_.cell(c)] : -1;
  }
  /// Position of c in boundary(), or -1.
  int boundary_index(HexCoord c) const {
    return box_.inside(c) ? boundary_pos_[box_.cell(c)] : -1;
  }
  /// Canonical indices of the six neighbors of hexes()[i] (-1 when outside).
  const std::array<int, 6>& neighbor_indices(int i) const { return neighbors_[i]; }

  /// Box covering the domain padded by two rings.
  const HexBox& box() const { return box_; }

  friend std::shared_ptr<const LatticeDomain> build_domain(std::vector<HexCoord> hexes,
                                                          double mesh);

 private:
  LatticeDomain() = default;

  double mesh_ = 1.0;
  std::vector<HexCoord> hexes_;
  std::vector<HexCoord> boundary_;
  HexBox box_;
  std::vector<int> index_;
  std::vector<int> boundary_pos_;
  std::vector<std::array<int, 6>> neighbors_;
  bool connected_ = false;
  bool simply_connected_ = false;
  bool jordan_ = false;
};

/// Validates and indexes a hexagon set.  Duplicates are ignored.
/// Throws Error(EmptyDomain) for an empty set.
std::shared_ptr<const LatticeDomain> build_domain(std::vector<HexCoord> hexes, double mesh);

struct BoundaryArcs {
  std::vector<HexCoord> xy;  ///< positions x, x+1, ..., y-1 (cyclic)
  std::vector<HexCoord> yx;  ///< positions y, ..., x-1
};

/// Splits the boundary loop at positions x and y.
/// Throws NotJordan, CoincidentSplitPoints (x == y) or BadSplitPoints (range).
BoundaryArcs boundary_arcs(const LatticeDomain& d, int x, int y);

/// Indices x, x+1, ..., y-1 modulo n.
std::vector<int> cyclic_range(int x, int y, int n);

// Shape generators used by tests and experiments.
std::vector<HexCoord> rhombus_hexes(int width, int height);
/// Hexagons whose centers lie within `radius` (in mesh units) of the origin.
std::vector<HexCoord> disc_hexes(double radius);
/// All hexagons within hex distance `radius` of the origin.
std::vector<HexCoord> hexagon_hexes(int radius);
int hex_distance(HexCoord a, HexCoord b);

/// All connected hexagon sets of the given size, each translated so its
/// smallest hexagon is (0, 0) and sorted.  With `up_to_symmetry` only one
/// representative per orbit of the 12 lattice rotations and reflections is kept.
std::vector<std::vector<HexCoord>> enumerate_polyhexes(int size, bool up_to_symmetry);

/// A lattice-Jordan hexagon set of the given size grown at random from
/// (0, 0); deterministic in `seed`.
std::vector<HexCoord> random_jordan_polyhex(int size, std::uint64_t seed);

nlohmann::json domain_to_json(const LatticeDomain& d);
std::shared_ptr<const LatticeDomain> domain_from_json(const nlohmann::json& j);

}  // namespace percolab
