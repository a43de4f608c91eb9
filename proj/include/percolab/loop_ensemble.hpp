#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "percolab/exploration.hpp"

namespace percolab {

/// A closed cluster interface, traversed with Yellow on the left and
/// rotated to start at the edge whose tail is the smallest vertex.
struct LatticeLoop {
  double mesh = 1.0;
  std::vector<DirectedEdge> edges;

  std::size_t size() const { return edges.size(); }
  std::vector<Vertex> vertices() const;  ///< tails, in order
  std::vector<Point> points() const;
  /// Signed enclosed area; positive when the loop runs counterclockwise
  /// (the outer contour of a Yellow cluster).
  double signed_area() const;

  friend bool operator==(const LatticeLoop& a, const LatticeLoop& b) { return a.edges == b.edges; }
  friend bool operator<(const LatticeLoop& a, const LatticeLoop& b) { return a.edges < b.edges; }
};

LatticeLoop make_loop(std::vector<DirectedEdge> cyclic_edges, double mesh);

struct LoopEnsemble {
  std::vector<LatticeLoop> loops;  ///< sorted canonical forms
  std::vector<int> parent;         ///< innermost enclosing loop, -1 for roots

  std::size_t size() const { return loops.size(); }
  bool same_loops(const LoopEnsemble& other) const { return loops == other.loops; }
};

/// Every cycle of edges separating a Yellow domain hexagon from a Blue one,
/// with everything outside the domain Blue.  Pretend colors, if present,
/// must all be Blue.
LoopEnsemble extract_loops_direct(const Coloring& c);

/// Picks the two split positions on a domain's boundary loop.
using SeedRule = std::function<std::pair<int, int>(const LatticeDomain&)>;

/// The boundary pair of maximal x-distance or maximal y-distance (hexagon
/// centers), whichever is larger; ties go to the lowest positions.
SeedRule max_extent_rule();
/// Uniformly random distinct positions from a generator seeded with `seed`.
SeedRule random_rule(std::uint64_t seed);

/// Iterated exploration construction under Blue boundary conditions: explore
/// between seed points with a pretend arc of the opposite color, close each
/// excursion of the path into a loop by exploring the mixed components it
/// cuts off, and recurse into every remaining monochromatic component.
LoopEnsemble extract_loops_algorithmic(const Coloring& c, const SeedRule& rule = max_extent_rule());

/// Parent of each loop: the smallest-area loop enclosing it, -1 for roots.
std::vector<int> nesting_tree(const std::vector<LatticeLoop>& loops);

/// Number of edges separating a Yellow domain hexagon from a Blue hexagon
/// (outside counted Blue).
std::size_t interface_edge_count(const Coloring& c);

/// Pastes the maximal excursions of the loops touching the boundary arc
/// Gamma = [b, a) into a path from a to b, joining them with the boundary
/// edge chain along Gamma.  `e` must come from a Blue-boundary extraction
/// on `d`.  Throws DegenerateArc when a == b.
LatticePath paste_excursions(const LoopEnsemble& e, const LatticeDomain& d, int a, int b);

nlohmann::json ensemble_to_json(const LoopEnsemble& e);
/// One row per loop: index,length,area,parent,depth.
std::string ensemble_summary_csv(const LoopEnsemble& e);

}  // namespace percolab
