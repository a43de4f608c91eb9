#include "percolab/loop_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace percolab {

namespace {

struct EdgeHash {
  std::size_t operator()(const DirectedEdge& e) const {
    return static_cast<std::size_t>(splitmix64(pack(e.right) * 8 + static_cast<std::uint64_t>(e.dir)));
  }
};

struct HexHash {
  std::size_t operator()(const HexCoord& h) const { return static_cast<std::size_t>(splitmix64(pack(h))); }
};

using EdgeSet = std::unordered_set<DirectedEdge, EdgeHash>;
template <class V>
using EdgeMap = std::unordered_map<DirectedEdge, V, EdgeHash>;

bool is_vertical(const DirectedEdge& e) { return e.dir == 0 || e.dir == 3; }

}  // namespace

std::vector<Vertex> LatticeLoop::vertices() const {
  std::vector<Vertex> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back(e.tail());
  return out;
}

std::vector<Point> LatticeLoop::points() const {
  std::vector<Point> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back(embed(e.tail(), mesh));
  return out;
}

double LatticeLoop::signed_area() const {
  const auto pts = points();
  double twice = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point a = pts[i], b = pts[(i + 1) % pts.size()];
    twice += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * twice;
}

LatticeLoop make_loop(std::vector<DirectedEdge> cyclic_edges, double mesh) {
  auto smallest = std::min_element(cyclic_edges.begin(), cyclic_edges.end(),
                                   [](const DirectedEdge& a, const DirectedEdge& b) { return a.tail() < b.tail(); });
  std::rotate(cyclic_edges.begin(), smallest, cyclic_edges.end());
  return {mesh, std::move(cyclic_edges)};
}

std::size_t interface_edge_count(const Coloring& c) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < c.domain().size(); ++i) {
    if (c[static_cast<int>(i)] != Color::Yellow) continue;
    for (int k = 0; k < 6; ++k) {
      if (c.realized(neighbor(c.domain().hexes()[i], k), Color::Blue) == Color::Blue) ++count;
    }
  }
  return count;
}

namespace {

bool encloses(const std::vector<Point>& poly, Point p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point a = poly[i], b = poly[j];
    if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
      const double xcross = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (xcross > p.real()) inside = !inside;
    }
  }
  return inside;
}

// Midpoint of a vertical edge: its height never coincides with a lattice
// vertex height, so ray casting from it is never degenerate.
Point probe_point(const LatticeLoop& loop) {
  for (const auto& e : loop.edges) {
    if (is_vertical(e)) return 0.5 * (embed(e.tail(), loop.mesh) + embed(e.head(), loop.mesh));
  }
  return embed(loop.edges.front().tail(), loop.mesh);
}

LoopEnsemble finish(std::vector<LatticeLoop> loops) {
  std::sort(loops.begin(), loops.end());
  LoopEnsemble out;
  out.parent = nesting_tree(loops);
  out.loops = std::move(loops);
  return out;
}

}  // namespace

std::vector<int> nesting_tree(const std::vector<LatticeLoop>& loops) {
  struct Info {
    std::vector<Point> poly;
    double area;
    double xmin, xmax, ymin, ymax;
    Point probe;
  };
  std::vector<Info> info;
  info.reserve(loops.size());
  for (const auto& l : loops) {
    Info in{l.points(), std::abs(l.signed_area()), 1e300, -1e300, 1e300, -1e300, probe_point(l)};
    for (const auto& p : in.poly) {
      in.xmin = std::min(in.xmin, p.real());
      in.xmax = std::max(in.xmax, p.real());
      in.ymin = std::min(in.ymin, p.imag());
      in.ymax = std::max(in.ymax, p.imag());
    }
    info.push_back(std::move(in));
  }
  std::vector<int> parent(loops.size(), -1);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const Point p = info[i].probe;
    for (std::size_t j = 0; j < loops.size(); ++j) {
      if (i == j || info[j].area <= info[i].area) continue;
      const Info& o = info[j];
      if (p.real() < o.xmin || p.real() > o.xmax || p.imag() < o.ymin || p.imag() > o.ymax) continue;
      if (!encloses(o.poly, p)) continue;
      if (parent[i] < 0 || o.area < info[parent[i]].area) parent[i] = static_cast<int>(j);
    }
  }
  return parent;
}

LoopEnsemble extract_loops_direct(const Coloring& c) {
  if (c.has_pretend()) {
    for (Color col : c.pretend()) {
      if (col != Color::Blue) throw Error(ErrorCode::ConfigError, "direct extraction needs Blue boundary conditions");
    }
  }
  const LatticeDomain& d = c.domain();
  auto real = [&](HexCoord h) { return c.realized(h, Color::Blue); };
  EdgeSet visited;
  std::vector<LatticeLoop> loops;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (c[static_cast<int>(i)] != Color::Yellow) continue;
    const HexCoord y = d.hexes()[i];
    for (int k = 0; k < 6; ++k) {
      const HexCoord nb = neighbor(y, k);
      if (real(nb) != Color::Blue) continue;
      const DirectedEdge start = edge_between(y, nb);
      if (visited.count(start)) continue;
      std::vector<DirectedEdge> cycle;
      DirectedEdge e = start;
      do {
        visited.insert(e);
        cycle.push_back(e);
        e = advance(e, real);
      } while (e != start);
      loops.push_back(make_loop(std::move(cycle), d.mesh()));
    }
  }
  return finish(std::move(loops));
}

SeedRule max_extent_rule() {
  return [](const LatticeDomain& d) {
    const auto& bd = d.boundary();
    const int n = static_cast<int>(bd.size());
    int xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    std::vector<Point> c(n);
    for (int i = 0; i < n; ++i) c[i] = center(bd[i], 1.0);
    for (int i = 1; i < n; ++i) {
      if (c[i].real() < c[xlo].real()) xlo = i;
      if (c[i].real() > c[xhi].real()) xhi = i;
      if (c[i].imag() < c[ylo].imag()) ylo = i;
      if (c[i].imag() > c[yhi].imag()) yhi = i;
    }
    const double dx = c[xhi].real() - c[xlo].real();
    const double dy = c[yhi].imag() - c[ylo].imag();
    const int a = dx >= dy ? xlo : ylo;
    const int b = dx >= dy ? xhi : yhi;
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
}

SeedRule random_rule(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](const LatticeDomain& d) {
    const int n = static_cast<int>(d.boundary().size());
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int x = pick(*rng);
    int y = pick(*rng);
    while (y == x) y = pick(*rng);
    return std::make_pair(x, y);
  };
}

namespace {

class LoopBuilder {
 public:
  LoopBuilder(const Coloring& top, const SeedRule& rule)
      : top_(top), rule_(rule), budget_(interface_edge_count(top)) {}

  std::vector<LatticeLoop> run() {
    tasks_.push_back({top_.domain().hexes(), Color::Blue});
    while (!tasks_.empty()) {
      auto [hexes, color] = std::move(tasks_.back());
      tasks_.pop_back();
      process(std::move(hexes), color);
    }
    if (emitted_ != budget_) {
      throw Error(ErrorCode::PastingError, "loops do not cover every interface edge exactly once");
    }
    return std::move(loops_);
  }

 private:
  struct Task {
    std::vector<HexCoord> hexes;
    Color boundary_color;
  };

  Color real(HexCoord h) const { return top_.realized(h, Color::Blue); }

  bool is_real(const DirectedEdge& e) const {
    return real(e.left()) == Color::Yellow && real(e.right) == Color::Blue;
  }

  Coloring restrict(const std::shared_ptr<const LatticeDomain>& d) const {
    std::vector<Color> colors;
    colors.reserve(d->size());
    for (const auto& h : d->hexes()) colors.push_back(real(h));
    return Coloring(d, std::move(colors));
  }

  // Queues every component of `region` minus `removed` as a monochromatic task.
  void queue_components(const LatticeDomain& region, const std::vector<char>& removed) {
    std::vector<char> seen(region.size(), 0);
    for (std::size_t s = 0; s < region.size(); ++s) {
      if (removed[s] || seen[s]) continue;
      std::vector<HexCoord> members;
      std::vector<int> stack{static_cast<int>(s)};
      seen[s] = 1;
      while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        members.push_back(region.hexes()[i]);
        for (int j : region.neighbor_indices(i)) {
          if (j >= 0 && !removed[j] && !seen[j]) {
            seen[j] = 1;
            stack.push_back(j);
          }
        }
      }
      queue_monochromatic(std::move(members));
    }
  }

  void queue_monochromatic(std::vector<HexCoord> members) {
    std::sort(members.begin(), members.end());
    bool has_yellow = false, has_blue = false;
    for (const auto& h : members) {
      for (int k = 0; k < 6; ++k) {
        const HexCoord nb = neighbor(h, k);
        if (std::binary_search(members.begin(), members.end(), nb)) continue;
        (real(nb) == Color::Yellow ? has_yellow : has_blue) = true;
      }
    }
    if (has_yellow && has_blue) {
      throw Error(ErrorCode::AmbiguousComponent, "component left without monochromatic boundary");
    }
    tasks_.push_back({std::move(members), has_yellow ? Color::Yellow : Color::Blue});
  }

  void process(std::vector<HexCoord> hexes, Color outer) {
    if (std::all_of(hexes.begin(), hexes.end(), [&](HexCoord h) { return real(h) == outer; })) return;

    const auto dom = build_domain(std::move(hexes), top_.domain().mesh());
    if (!dom->lattice_jordan()) throw Error(ErrorCode::NotJordan, "subdomain is not lattice-Jordan");
    const auto [x, y] = rule_(*dom);
    const Coloring sub = restrict(dom).with_arcs(x, y);
    const LatticePath gamma = explore_chordal(sub, x, y);
    const SubdomainReport report = classify_components(sub, gamma, x, y, outer);

    // Loop pieces: maximal runs of real interface edges along gamma (the
    // pretend arc makes its first and last edges fake) and the explorations
    // of the mixed components.  An exploration of a mixed component starts and
    // ends on edges between two of its boundary hexagons, which another piece
    // may share.
    struct Piece {
      std::vector<DirectedEdge> edges;
      bool from_gamma;
      bool used = false;
    };
    std::vector<Piece> pieces;
    EdgeSet gamma_real;
    for (std::size_t i = 0; i < gamma.size();) {
      if (!is_real(gamma.edges[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < gamma.size() && is_real(gamma.edges[j])) gamma_real.insert(gamma.edges[j++]);
      pieces.push_back({{gamma.edges.begin() + i, gamma.edges.begin() + j}, true});
      i = j;
    }
    for (const auto& comp : report.components) {
      if (!comp.mixed) {
        queue_monochromatic(comp.domain->hexes());
        continue;
      }
      const Coloring kc = restrict(comp.domain).with_pretend(realized_boundary(top_, *comp.domain, Color::Blue));
      LatticePath delta = explore_chordal(kc, comp.color_change->first, comp.color_change->second);
      std::vector<char> removed(comp.domain->size(), 0);
      for (const auto& h : fatten(delta, *comp.domain)) removed[comp.domain->index_of(h)] = 1;
      queue_components(*comp.domain, removed);
      pieces.push_back({std::move(delta.edges), false});
    }
    EdgeMap<int> piece_start;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (!piece_start.emplace(pieces[i].edges.front(), static_cast<int>(i)).second) {
        throw Error(ErrorCode::PastingError, "two loop pieces start on the same edge");
      }
    }
    auto unused_piece_at = [&](const DirectedEdge& e) -> Piece* {
      const auto it = piece_start.find(e);
      return it != piece_start.end() && !pieces[it->second].used ? &pieces[it->second] : nullptr;
    };

    // Unexplored hexagons of this task: no connector may touch them.
    std::vector<char> fat(dom->size(), 0);
    for (const auto& h : fatten(gamma, *dom)) fat[dom->index_of(h)] = 1;
    auto unexplored = [&](HexCoord h) {
      const int i = dom->index_of(h);
      return i >= 0 && !fat[i];
    };

    for (auto& first : pieces) {
      if (first.used || !first.from_gamma) continue;
      first.used = true;
      const DirectedEdge start = first.edges.front();
      std::vector<DirectedEdge> cycle = first.edges;
      for (;;) {
        if (cycle.size() > 1 && cycle.back() == start) {
          cycle.pop_back();
          break;
        }
        if (Piece* shared = unused_piece_at(cycle.back())) {
          shared->used = true;
          cycle.insert(cycle.end(), shared->edges.begin() + 1, shared->edges.end());
          continue;
        }
        const DirectedEdge e = advance(cycle.back(), [&](HexCoord h) { return real(h); });
        if (e == start) break;
        if (Piece* next = unused_piece_at(e)) {
          next->used = true;
          cycle.insert(cycle.end(), next->edges.begin(), next->edges.end());
          continue;
        }
        if (gamma_real.count(e) || unexplored(e.left()) || unexplored(e.right)) {
          throw Error(ErrorCode::PastingError, "connector left the boundary of the excursion domain");
        }
        cycle.push_back(e);
        if (cycle.size() > budget_) throw Error(ErrorCode::NonTermination, "pasted loop exceeds interface budget");
      }
      emitted_ += cycle.size();
      if (emitted_ > budget_) throw Error(ErrorCode::NonTermination, "more loop edges than interface edges");
      loops_.push_back(make_loop(std::move(cycle), dom->mesh()));
    }
    for (const auto& piece : pieces) {
      if (!piece.used) throw Error(ErrorCode::PastingError, "mixed component exploration not pasted into any loop");
    }
  }

  const Coloring& top_;
  const SeedRule& rule_;
  std::size_t budget_;
  std::size_t emitted_ = 0;
  std::vector<Task> tasks_;
  std::vector<LatticeLoop> loops_;
};

}  // namespace

LoopEnsemble extract_loops_algorithmic(const Coloring& c, const SeedRule& rule) {
  if (!c.domain().lattice_jordan()) throw Error(ErrorCode::NotJordan, "algorithmic extraction needs a lattice-Jordan domain");
  if (c.has_pretend()) {
    for (Color col : c.pretend()) {
      if (col != Color::Blue) throw Error(ErrorCode::ConfigError, "algorithmic extraction needs Blue boundary conditions");
    }
  }
  return finish(LoopBuilder(c, rule).run());
}

LatticePath paste_excursions(const LoopEnsemble& e, const LatticeDomain& d, int a, int b) {
  if (!d.lattice_jordan()) throw Error(ErrorCode::NotJordan, "pasting needs a lattice-Jordan domain");
  const int n = static_cast<int>(d.boundary().size());
  if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorCode::BadSplitPoints, "arc endpoint out of range");
  if (a == b) throw Error(ErrorCode::DegenerateArc, "arc [b, a) is empty");
  const auto& bd = d.boundary();

  std::vector<char> on_gamma(n, 0);
  for (int i : cyclic_range(b, a, n)) on_gamma[i] = 1;
  auto chain_color = [&](HexCoord h) {
    const int pos = d.boundary_index(h);
    return pos >= 0 && on_gamma[pos] ? Color::Yellow : Color::Blue;
  };

  // The boundary edge chain along Gamma: the exploration path of a domain
  // whose hexagons are all Blue.
  std::vector<DirectedEdge> chain{edge_between(bd[(a + n - 1) % n], bd[a])};
  for (;;) {
    chain.push_back(advance(chain.back(), chain_color));
    const auto& last = chain.back();
    if (!d.contains(last.left()) && !d.contains(last.right)) break;
    if (chain.size() > 6 * (d.size() + bd.size())) throw Error(ErrorCode::NonTermination, "boundary chain");
  }
  EdgeMap<int> chain_index;
  for (std::size_t i = 0; i < chain.size(); ++i) chain_index[chain[i]] = static_cast<int>(i);

  struct Excursion {
    int first, last;  // chain indices of the extreme contacts
    std::vector<DirectedEdge> edges;
  };
  std::vector<Excursion> excursions;
  for (const auto& loop : e.loops) {
    int lo = -1, hi = -1, plo = -1, phi = -1;
    const int len = static_cast<int>(loop.size());
    for (int p = 0; p < len; ++p) {
      const DirectedEdge& edge = loop.edges[p];
      const int pos = d.boundary_index(edge.right);
      if (pos < 0 || !on_gamma[pos]) continue;
      const auto it = chain_index.find(edge.reversed());
      if (it == chain_index.end()) throw Error(ErrorCode::PastingError, "contact edge not on the boundary chain");
      if (lo < 0 || it->second < lo) lo = it->second, plo = p;
      if (hi < 0 || it->second > hi) hi = it->second, phi = p;
    }
    if (lo < 0) continue;
    Excursion ex{lo, hi, {}};
    const int count = (phi - plo - 1 + len) % len;
    for (int s = 1; s <= count; ++s) ex.edges.push_back(loop.edges[(plo + s) % len]);
    excursions.push_back(std::move(ex));
  }
  std::sort(excursions.begin(), excursions.end(), [](const Excursion& x, const Excursion& y) { return x.first < y.first; });

  LatticePath out;
  out.mesh = d.mesh();
  int cursor = 0;
  int reach = -1;
  for (const auto& ex : excursions) {
    if (ex.last < reach) continue;  // nested inside an earlier, larger excursion
    reach = ex.last;
    out.edges.insert(out.edges.end(), chain.begin() + cursor, chain.begin() + ex.first);
    out.edges.insert(out.edges.end(), ex.edges.begin(), ex.edges.end());
    cursor = ex.last + 1;
  }
  out.edges.insert(out.edges.end(), chain.begin() + cursor, chain.end());
  return out;
}

nlohmann::json ensemble_to_json(const LoopEnsemble& e) {
  nlohmann::json loops = nlohmann::json::array();
  for (const auto& l : e.loops) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : l.points()) pts.push_back({p.real(), p.imag()});
    loops.push_back(pts);
  }
  return {{"loops", loops}, {"parent", e.parent}};
}

std::string ensemble_summary_csv(const LoopEnsemble& e) {
  std::ostringstream os;
  os << "index,length,area,parent,depth\n";
  for (std::size_t i = 0; i < e.loops.size(); ++i) {
    int depth = 1;
    for (int p = e.parent[i]; p >= 0; p = e.parent[p]) ++depth;
    os << i << ',' << e.loops[i].size() << ',' << std::abs(e.loops[i].signed_area()) << ',' << e.parent[i] << ','
       << depth << '\n';
  }
  return os.str();
}

}  // namespace percolab
