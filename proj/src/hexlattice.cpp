#include "percolab/hexlattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "percolab/error.hpp"

namespace percolab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::NotJordan: return "NotJordan";
    case ErrorCode::CoincidentSplitPoints: return "CoincidentSplitPoints";
    case ErrorCode::BadSplitPoints: return "BadSplitPoints";
    case ErrorCode::AmbiguousComponent: return "AmbiguousComponent";
    case ErrorCode::PastingError: return "PastingError";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::DegenerateArc: return "DegenerateArc";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::PoleAtMinusOne: return "PoleAtMinusOne";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NonPositiveIncrement: return "NonPositiveIncrement";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

std::array<HexCoord, 6> hex_neighbors(HexCoord c) {
  std::array<HexCoord, 6> out;
  for (int k = 0; k < 6; ++k) out[k] = neighbor(c, k);
  return out;
}

int direction_to(HexCoord a, HexCoord b) {
  const HexCoord d{b.q - a.q, b.r - a.r};
  for (int k = 0; k < 6; ++k) {
    if (kDirections[k] == d) return k;
  }
  return -1;
}

Point center(HexCoord c, double mesh) {
  static const double kSqrt3 = std::sqrt(3.0);
  return {mesh * kSqrt3 * (c.q + 0.5 * c.r), mesh * 1.5 * c.r};
}

Vertex corner(HexCoord c, int k) {
  switch (wrap6(k)) {
    case 0: return {c.q, c.r + 1, true};
    case 1: return {c.q, c.r, false};
    case 2: return {c.q - 1, c.r + 1, true};
    case 3: return {c.q, c.r - 1, false};
    case 4: return {c.q, c.r, true};
    default: return {c.q + 1, c.r - 1, false};
  }
}

Point embed(Vertex v, double mesh) {
  const Point c = center({v.q, v.r}, mesh);
  return v.south ? c - Point(0.0, mesh) : c + Point(0.0, mesh);
}

std::array<HexCoord, 3> incident_hexes(Vertex v) {
  if (v.south) return {HexCoord{v.q, v.r}, HexCoord{v.q, v.r - 1}, HexCoord{v.q + 1, v.r - 1}};
  return {HexCoord{v.q, v.r}, HexCoord{v.q, v.r + 1}, HexCoord{v.q - 1, v.r + 1}};
}

HexBox HexBox::around(std::span<const HexCoord> hexes, int pad) {
  int qmin = std::numeric_limits<int>::max(), rmin = qmin;
  int qmax = std::numeric_limits<int>::min(), rmax = qmax;
  for (const auto& h : hexes) {
    qmin = std::min(qmin, h.q);
    qmax = std::max(qmax, h.q);
    rmin = std::min(rmin, h.r);
    rmax = std::max(rmax, h.r);
  }
  return {qmin - pad, rmin - pad, qmax - qmin + 1 + 2 * pad, rmax - rmin + 1 + 2 * pad};
}

namespace {

// Walks the outer contour of the domain keeping the domain on the left and
// returns the sequence of outside hexagons met, consecutive repeats removed.
std::vector<HexCoord> outer_contour(const LatticeDomain& d) {
  HexCoord start = d.hexes().front();
  for (const auto& h : d.hexes()) {
    if (h.r < start.r || (h.r == start.r && h.q < start.q)) start = h;
  }
  // Right hexagon is the south-west neighbour, which lies in an empty row.
  const HexCoord r0 = neighbor(start, 4);
  const int k0 = direction_to(r0, start);
  HexCoord right = r0;
  int k = k0;
  std::vector<HexCoord> seq;
  const std::size_t budget = 12 * (d.size() + 8);
  for (std::size_t step = 0;; ++step) {
    if (seq.empty() || seq.back() != right) seq.push_back(right);
    const HexCoord w = neighbor(right, k - 1);
    if (d.contains(w)) {
      k = wrap6(k - 1);
    } else {
      right = w;
      k = wrap6(k + 1);
    }
    if (right == r0 && k == k0) break;
    if (step > budget) throw Error(ErrorCode::NonTermination, "outer contour walk");
  }
  while (seq.size() > 1 && seq.front() == seq.back()) seq.pop_back();
  return seq;
}

}  // namespace

std::shared_ptr<const LatticeDomain> build_domain(std::vector<HexCoord> hexes, double mesh) {
  if (hexes.empty()) throw Error(ErrorCode::EmptyDomain, "no hexagons");
  std::sort(hexes.begin(), hexes.end());
  hexes.erase(std::unique(hexes.begin(), hexes.end()), hexes.end());

  std::shared_ptr<LatticeDomain> d(new LatticeDomain());
  d->mesh_ = mesh;
  d->hexes_ = std::move(hexes);
  d->box_ = HexBox::around(d->hexes_, 2);
  d->index_.assign(d->box_.size(), -1);
  d->boundary_pos_.assign(d->box_.size(), -1);
  for (std::size_t i = 0; i < d->hexes_.size(); ++i) d->index_[d->box_.cell(d->hexes_[i])] = static_cast<int>(i);

  const std::size_t n = d->hexes_.size();
  d->neighbors_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 6; ++k) d->neighbors_[i][k] = d->index_of(neighbor(d->hexes_[i], k));
  }

  // Connectivity of the domain.
  {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j : d->neighbors_[i]) {
        if (j >= 0 && !seen[j]) {
          seen[j] = 1;
          ++count;
          stack.push_back(j);
        }
      }
    }
    d->connected_ = count == n;
  }

  // Connectivity of the complement inside the padded box; the box border is
  // outside the domain and connected to infinity.
  std::size_t adjacent_count = 0;
  {
    const HexBox& box = d->box_;
    std::vector<char> seen(box.size(), 0);
    std::vector<std::size_t> stack;
    const HexCoord origin{box.q0, box.r0};
    seen[box.cell(origin)] = 1;
    stack.push_back(box.cell(origin));
    std::size_t reached = 1;
    while (!stack.empty()) {
      const HexCoord c = box.coord(stack.back());
      stack.pop_back();
      for (int k = 0; k < 6; ++k) {
        const HexCoord nb = neighbor(c, k);
        if (!box.inside(nb)) continue;
        const std::size_t cell = box.cell(nb);
        if (seen[cell] || d->index_[cell] >= 0) continue;
        seen[cell] = 1;
        ++reached;
        stack.push_back(cell);
      }
    }
    d->simply_connected_ = d->connected_ && reached == box.size() - n;

    std::vector<char> adj(box.size(), 0);
    for (const auto& h : d->hexes_) {
      for (int k = 0; k < 6; ++k) {
        const HexCoord nb = neighbor(h, k);
        const std::size_t cell = box.cell(nb);
        if (d->index_[cell] < 0 && !adj[cell]) {
          adj[cell] = 1;
          ++adjacent_count;
        }
      }
    }
  }

  if (d->simply_connected_) {
    std::vector<HexCoord> loop = outer_contour(*d);
    std::vector<HexCoord> sorted = loop;
    std::sort(sorted.begin(), sorted.end());
    const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    if (distinct && loop.size() == adjacent_count && loop.size() >= 3) {
      const auto smallest = std::min_element(loop.begin(), loop.end());
      std::rotate(loop.begin(), smallest, loop.end());
      d->boundary_ = std::move(loop);
      d->jordan_ = true;
      for (std::size_t i = 0; i < d->boundary_.size(); ++i) {
        d->boundary_pos_[d->box_.cell(d->boundary_[i])] = static_cast<int>(i);
      }
    }
  }
  return d;
}

std::vector<int> cyclic_range(int x, int y, int n) {
  std::vector<int> out;
  for (int i = x; i != y; i = (i + 1) % n) out.push_back(i);
  return out;
}

BoundaryArcs boundary_arcs(const LatticeDomain& d, int x, int y) {
  if (!d.lattice_jordan()) throw Error(ErrorCode::NotJordan, "boundary arcs need a lattice-Jordan domain");
  const int n = static_cast<int>(d.boundary().size());
  if (x < 0 || y < 0 || x >= n || y >= n) throw Error(ErrorCode::BadSplitPoints, "split position out of range");
  if (x == y) throw Error(ErrorCode::CoincidentSplitPoints, "x == y");
  BoundaryArcs arcs;
  for (int i : cyclic_range(x, y, n)) arcs.xy.push_back(d.boundary()[i]);
  for (int i : cyclic_range(y, x, n)) arcs.yx.push_back(d.boundary()[i]);
  return arcs;
}

std::vector<HexCoord> rhombus_hexes(int width, int height) {
  std::vector<HexCoord> out;
  for (int r = 0; r < height; ++r)
    for (int q = 0; q < width; ++q) out.push_back({q, r});
  return out;
}

std::vector<HexCoord> disc_hexes(double radius) {
  std::vector<HexCoord> out;
  const int span = static_cast<int>(std::ceil(radius)) + 2;
  for (int r = -span; r <= span; ++r) {
    for (int q = -2 * span; q <= 2 * span; ++q) {
      if (std::abs(center({q, r}, 1.0)) <= radius) out.push_back({q, r});
    }
  }
  return out;
}

int hex_distance(HexCoord a, HexCoord b) {
  const int dq = a.q - b.q, dr = a.r - b.r;
  return (std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2;
}

std::vector<HexCoord> hexagon_hexes(int radius) {
  std::vector<HexCoord> out;
  for (int r = -radius; r <= radius; ++r)
    for (int q = -radius; q <= radius; ++q)
      if (hex_distance({q, r}, {0, 0}) <= radius) out.push_back({q, r});
  return out;
}

namespace {

std::vector<HexCoord> normalized(std::vector<HexCoord> hexes) {
  std::sort(hexes.begin(), hexes.end());
  const HexCoord origin = hexes.front();
  for (auto& h : hexes) h = {h.q - origin.q, h.r - origin.r};
  return hexes;
}

std::vector<HexCoord> symmetric_canonical(const std::vector<HexCoord>& hexes) {
  std::vector<HexCoord> best = normalized(hexes);
  std::vector<HexCoord> image = hexes;
  for (int mirror = 0; mirror < 2; ++mirror) {
    for (int turn = 0; turn < 6; ++turn) {
      for (auto& h : image) h = {-h.r, h.q + h.r};
      best = std::min(best, normalized(image));
    }
    for (auto& h : image) h = {h.r, h.q};
  }
  return best;
}

}  // namespace

std::vector<std::vector<HexCoord>> enumerate_polyhexes(int size, bool up_to_symmetry) {
  if (size < 1) return {};
  std::set<std::vector<HexCoord>> level{{HexCoord{0, 0}}};
  for (int n = 2; n <= size; ++n) {
    std::set<std::vector<HexCoord>> next;
    for (const auto& shape : level) {
      for (const auto& h : shape) {
        for (const auto& nb : hex_neighbors(h)) {
          if (std::binary_search(shape.begin(), shape.end(), nb)) continue;
          std::vector<HexCoord> grown = shape;
          grown.push_back(nb);
          next.insert(up_to_symmetry ? symmetric_canonical(grown) : normalized(grown));
        }
      }
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

std::vector<HexCoord> random_jordan_polyhex(int size, std::uint64_t seed) {
  if (size < 1) throw Error(ErrorCode::EmptyDomain, "polyhex size must be positive");
  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<HexCoord> shape{{0, 0}};
    while (static_cast<int>(shape.size()) < size) {
      const HexCoord from = shape[std::uniform_int_distribution<std::size_t>(0, shape.size() - 1)(rng)];
      const HexCoord nb = neighbor(from, std::uniform_int_distribution<int>(0, 5)(rng));
      if (std::find(shape.begin(), shape.end(), nb) == shape.end()) shape.push_back(nb);
    }
    if (build_domain(shape, 1.0)->lattice_jordan()) return normalized(shape);
  }
}

nlohmann::json domain_to_json(const LatticeDomain& d) {
  nlohmann::json hexes = nlohmann::json::array();
  for (const auto& h : d.hexes()) hexes.push_back({h.q, h.r});
  return {{"mesh", d.mesh()}, {"hexes", hexes}};
}

std::shared_ptr<const LatticeDomain> domain_from_json(const nlohmann::json& j) {
  std::vector<HexCoord> hexes;
  for (const auto& h : j.at("hexes")) hexes.push_back({h.at(0).get<int>(), h.at(1).get<int>()});
  return build_domain(std::move(hexes), j.at("mesh").get<double>());
}

}  // namespace percolab
