#include "percolab/exploration.hpp"

#include <algorithm>

namespace percolab {

DirectedEdge edge_between(HexCoord left, HexCoord right) {
  const int k = direction_to(right, left);
  if (k < 0) throw Error(ErrorCode::ConfigError, "edge between non-adjacent hexagons");
  return {right, k};
}

std::vector<Vertex> LatticePath::vertices() const {
  std::vector<Vertex> out;
  if (edges.empty()) return out;
  out.reserve(edges.size() + 1);
  out.push_back(edges.front().tail());
  for (const auto& e : edges) out.push_back(e.head());
  return out;
}

std::vector<Point> LatticePath::points() const {
  std::vector<Point> out;
  for (const auto& v : vertices()) out.push_back(embed(v, mesh));
  return out;
}

LatticePath explore_chordal(const Coloring& c, int x, int y) {
  const LatticeDomain& d = c.domain();
  if (!d.lattice_jordan()) throw Error(ErrorCode::NotJordan, "exploration needs a lattice-Jordan domain");
  const int n = static_cast<int>(d.boundary().size());
  if (x < 0 || y < 0 || x >= n || y >= n || x == y) {
    throw Error(ErrorCode::BadSplitPoints, "split positions must be distinct boundary positions");
  }
  const Coloring colored = c.has_pretend() ? c : c.with_arcs(x, y);
  if (c.has_pretend()) {
    for (int i : cyclic_range(x, y, n)) {
      if (colored.pretend()[i] != Color::Blue) throw Error(ErrorCode::BadSplitPoints, "pretend arc x->y not Blue");
    }
    for (int i : cyclic_range(y, x, n)) {
      if (colored.pretend()[i] != Color::Yellow) throw Error(ErrorCode::BadSplitPoints, "pretend arc y->x not Yellow");
    }
  }

  const auto& bd = d.boundary();
  LatticePath path;
  path.mesh = d.mesh();
  DirectedEdge e = edge_between(bd[(x + n - 1) % n], bd[x]);
  path.edges.push_back(e);
  const std::size_t budget = 6 * (d.size() + bd.size()) + 6;
  auto color_of = [&](HexCoord h) { return colored.at(h); };
  for (;;) {
    e = advance(e, color_of);
    path.edges.push_back(e);
    if (!d.contains(e.left()) && !d.contains(e.right)) break;
    if (path.edges.size() > budget) throw Error(ErrorCode::NonTermination, "exploration exceeded its step budget");
  }
  if (e.left() != bd[y] || e.right != bd[(y + n - 1) % n]) {
    throw Error(ErrorCode::BadSplitPoints, "exploration did not end at y");
  }
  return path;
}

std::vector<HexCoord> fatten_prefix(const LatticePath& path, std::size_t t, const LatticeDomain& d) {
  std::vector<HexCoord> out;
  t = std::min(t, path.size());
  for (std::size_t i = 0; i < t; ++i) {
    const auto& e = path.edges[i];
    if (d.contains(e.left())) out.push_back(e.left());
    if (d.contains(e.right)) out.push_back(e.right);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<HexCoord> fatten(const LatticePath& path, const LatticeDomain& d) {
  return fatten_prefix(path, path.size(), d);
}

std::size_t first_touch(const LatticePath& path, std::span<const HexCoord> arc) {
  std::vector<HexCoord> sorted(arc.begin(), arc.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& e = path.edges[i];
    if (std::binary_search(sorted.begin(), sorted.end(), e.left()) ||
        std::binary_search(sorted.begin(), sorted.end(), e.right)) {
      return i;
    }
  }
  return path.size();
}

std::vector<HexCoord> LatticeHull::all() const {
  std::vector<HexCoord> out = explored;
  out.insert(out.end(), disconnected.begin(), disconnected.end());
  std::sort(out.begin(), out.end());
  return out;
}

LatticeHull fill_hull(const Coloring& c, const LatticePath& path, std::size_t t, int b) {
  const LatticeDomain& d = c.domain();
  if (t > path.size()) throw Error(ErrorCode::ConfigError, "hull time beyond path length");
  LatticeHull hull;
  hull.time_index = t;
  if (t == 0) return hull;
  const int n = static_cast<int>(d.boundary().size());
  if (b < 0 || b >= n) throw Error(ErrorCode::BadSplitPoints, "target position out of range");

  hull.explored = fatten_prefix(path, t, d);
  std::vector<char> removed(d.size(), 0);
  for (const auto& h : hull.explored) removed[d.index_of(h)] = 1;

  std::vector<char> reached(d.size(), 0);
  std::vector<int> stack;
  for (const HexCoord target : {d.boundary()[(b + n - 1) % n], d.boundary()[b]}) {
    for (int k = 0; k < 6; ++k) {
      const int i = d.index_of(neighbor(target, k));
      if (i >= 0 && !removed[i] && !reached[i]) {
        reached[i] = 1;
        stack.push_back(i);
      }
    }
  }
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j : d.neighbor_indices(i)) {
      if (j >= 0 && !removed[j] && !reached[j]) {
        reached[j] = 1;
        stack.push_back(j);
      }
    }
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!removed[i] && !reached[i]) hull.disconnected.push_back(d.hexes()[i]);
  }
  return hull;
}

std::vector<Color> realized_boundary(const Coloring& c, const LatticeDomain& sub, Color outer) {
  std::vector<Color> out;
  out.reserve(sub.boundary().size());
  for (const auto& h : sub.boundary()) out.push_back(c.realized(h, outer));
  return out;
}

std::optional<std::pair<int, int>> two_arc_split(std::span<const Color> cycle) {
  const int n = static_cast<int>(cycle.size());
  int to_blue = -1, to_yellow = -1, changes = 0;
  for (int i = 0; i < n; ++i) {
    const Color prev = cycle[(i + n - 1) % n];
    if (prev == cycle[i]) continue;
    ++changes;
    if (cycle[i] == Color::Blue) to_blue = i;
    else to_yellow = i;
  }
  if (changes != 2) return std::nullopt;
  return std::make_pair(to_blue, to_yellow);
}

SubdomainReport classify_components(const Coloring& c, const LatticePath& path, int x, int y, Color outer) {
  const LatticeDomain& d = c.domain();
  if (!d.lattice_jordan()) throw Error(ErrorCode::NotJordan, "classification needs a lattice-Jordan domain");
  const int n = static_cast<int>(d.boundary().size());
  std::vector<char> in_xy(n, 0);
  for (int i : cyclic_range(x, y, n)) in_xy[i] = 1;

  std::vector<char> fat(d.size(), 0);
  for (const auto& h : fatten(path, d)) fat[d.index_of(h)] = 1;

  SubdomainReport report;
  std::vector<char> seen(d.size(), 0);
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (fat[s] || seen[s]) continue;
    std::vector<HexCoord> members;
    bool touch_fy = false, touch_fb = false, touch_xy = false, touch_yx = false;
    std::vector<int> stack{static_cast<int>(s)};
    seen[s] = 1;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      const HexCoord h = d.hexes()[i];
      members.push_back(h);
      for (int k = 0; k < 6; ++k) {
        const int j = d.neighbor_indices(i)[k];
        if (j < 0) {
          const int pos = d.boundary_index(neighbor(h, k));
          if (pos >= 0) (in_xy[pos] ? touch_xy : touch_yx) = true;
        } else if (fat[j]) {
          (c[j] == Color::Yellow ? touch_fy : touch_fb) = true;
        } else if (!seen[j]) {
          seen[j] = 1;
          stack.push_back(j);
        }
      }
    }
    const bool touch_f = touch_fy || touch_fb;
    SubdomainComponent comp;
    if (touch_f && touch_yx && !touch_xy) comp.type = 1;
    else if (touch_f && touch_xy && !touch_yx) comp.type = 2;
    else if (!touch_xy && !touch_yx && touch_fy && !touch_fb) comp.type = 3;
    else if (!touch_xy && !touch_yx && touch_fb && !touch_fy) comp.type = 4;
    else throw Error(ErrorCode::AmbiguousComponent, "component matches none of the four types");

    comp.domain = build_domain(std::move(members), d.mesh());
    bool has_yellow = false, has_blue = false;
    for (const auto& h : comp.domain->hexes()) {
      for (int k = 0; k < 6; ++k) {
        const HexCoord nb = neighbor(h, k);
        if (comp.domain->contains(nb)) continue;
        (c.realized(nb, outer) == Color::Yellow ? has_yellow : has_blue) = true;
      }
    }
    comp.mixed = has_yellow && has_blue;
    if (comp.mixed) {
      if (!comp.domain->lattice_jordan()) throw Error(ErrorCode::AmbiguousComponent, "mixed component is not lattice-Jordan");
      comp.color_change = two_arc_split(realized_boundary(c, *comp.domain, outer));
      if (!comp.color_change) throw Error(ErrorCode::AmbiguousComponent, "mixed component without a two-arc boundary");
    }
    report.components.push_back(std::move(comp));
  }
  return report;
}

std::size_t first_exit(const LatticePath& path, std::span<const HexCoord> region) {
  const auto vs = path.vertices();
  for (std::size_t t = 0; t < vs.size(); ++t) {
    for (const auto& h : incident_hexes(vs[t])) {
      if (!std::binary_search(region.begin(), region.end(), h)) return t;
    }
  }
  return path.size();
}

std::size_t first_exit(const LatticePath& path, Point disc_center, double radius) {
  const auto vs = path.vertices();
  for (std::size_t t = 0; t < vs.size(); ++t) {
    if (std::abs(embed(vs[t], path.mesh) - disc_center) > radius) return t;
  }
  return path.size();
}

DirectedEdge half_plane_start_edge() { return edge_between({-1, -1}, {0, -1}); }

Point half_plane_origin(double mesh) { return embed(half_plane_start_edge().head(), mesh); }

HexCoord half_plane_mirror(HexCoord c) { return {-2 - c.q - c.r, c.r}; }

std::vector<DirectedEdge> explore_half_plane(const std::function<Color(HexCoord)>& site_color,
                                             const std::function<bool(const std::vector<DirectedEdge>&)>& stop,
                                             std::size_t max_steps) {
  auto color_of = [&](HexCoord h) {
    if (h.r < 0) return h.q < 0 ? Color::Yellow : Color::Blue;
    return site_color(h);
  };
  std::vector<DirectedEdge> edges{half_plane_start_edge()};
  while (edges.size() < max_steps && !stop(edges)) edges.push_back(advance(edges.back(), color_of));
  return edges;
}

nlohmann::json path_to_json(const LatticePath& path) {
  nlohmann::json pts = nlohmann::json::array(), corners = nlohmann::json::array();
  for (const auto& v : path.vertices()) {
    const Point p = embed(v, path.mesh);
    pts.push_back({p.real(), p.imag()});
    corners.push_back({v.q, v.r, v.south ? 1 : 0});
  }
  return {{"mesh", path.mesh}, {"points", pts}, {"corners", corners}};
}

nlohmann::json hull_to_json(const LatticeHull& hull) {
  nlohmann::json hexes = nlohmann::json::array();
  for (const auto& h : hull.all()) hexes.push_back({h.q, h.r});
  return {{"time_index", hull.time_index}, {"hexes", hexes}};
}

}  // namespace percolab
