#include "percolab/percolation.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "percolab/error.hpp"

namespace percolab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (0xD1B54A32D192ED03ull * (index + 1)));
}

std::uint64_t site_bits(std::uint64_t seed, HexCoord c) {
  return splitmix64(seed ^ splitmix64(pack(c)));
}

Color site_color(std::uint64_t seed, HexCoord c, double p, bool complemented) {
  if (p >= 1.0) return complemented ? Color::Yellow : Color::Blue;
  if (p <= 0.0) return complemented ? Color::Blue : Color::Yellow;
  const auto threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
  std::uint64_t bits = site_bits(seed, c);
  if (complemented) bits = ~bits;
  return bits < threshold ? Color::Blue : Color::Yellow;
}

Coloring::Coloring(std::shared_ptr<const LatticeDomain> domain, std::vector<Color> colors)
    : domain_(std::move(domain)), colors_(std::move(colors)) {
  if (colors_.size() != domain_->size()) throw Error(ErrorCode::ConfigError, "coloring size mismatch");
}

Color Coloring::at(HexCoord c) const {
  const int i = domain_->index_of(c);
  if (i >= 0) return colors_[i];
  if (pretend_) {
    const int b = domain_->boundary_index(c);
    if (b >= 0) return (*pretend_)[b];
  }
  throw Error(ErrorCode::ConfigError, "color requested outside domain and boundary");
}

Coloring Coloring::with_pretend(std::vector<Color> pretend) const {
  if (!domain_->lattice_jordan()) throw Error(ErrorCode::NotJordan, "pretend colors need a boundary loop");
  if (pretend.size() != domain_->boundary().size()) {
    throw Error(ErrorCode::ConfigError, "pretend colors must cover the boundary loop");
  }
  Coloring out = *this;
  out.pretend_ = std::move(pretend);
  return out;
}

Coloring Coloring::with_arcs(int x, int y) const {
  const int n = static_cast<int>(domain_->boundary().size());
  if (!domain_->lattice_jordan()) throw Error(ErrorCode::NotJordan, "pretend colors need a boundary loop");
  if (x < 0 || y < 0 || x >= n || y >= n) throw Error(ErrorCode::BadSplitPoints, "split position out of range");
  if (x == y) throw Error(ErrorCode::CoincidentSplitPoints, "x == y");
  std::vector<Color> pretend(n, Color::Yellow);
  for (int i : cyclic_range(x, y, n)) pretend[i] = Color::Blue;
  return with_pretend(std::move(pretend));
}

Coloring Coloring::complemented() const {
  Coloring out = *this;
  for (auto& c : out.colors_) c = flip(c);
  if (out.pretend_) {
    for (auto& c : *out.pretend_) c = flip(c);
  }
  return out;
}

Coloring sample_coloring(std::shared_ptr<const LatticeDomain> d, double p, std::uint64_t seed,
                         bool complemented) {
  std::vector<Color> colors(d->size());
  for (std::size_t i = 0; i < colors.size(); ++i) colors[i] = site_color(seed, d->hexes()[i], p, complemented);
  return Coloring(std::move(d), std::move(colors));
}

Coloring uniform_coloring(std::shared_ptr<const LatticeDomain> d, Color c) {
  std::vector<Color> colors(d->size(), c);
  return Coloring(std::move(d), std::move(colors));
}

namespace {

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

ClusterLabels color_clusters(const Coloring& c) {
  const LatticeDomain& d = c.domain();
  const int n = static_cast<int>(d.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < n; ++i) {
    for (int j : d.neighbor_indices(i)) {
      if (j > i && c[i] == c[j]) {
        const int a = find_root(parent, i), b = find_root(parent, j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  ClusterLabels out;
  out.label.assign(n, -1);
  std::vector<int> id_of_root(n, -1);
  for (int i = 0; i < n; ++i) {
    const int root = find_root(parent, i);
    if (id_of_root[root] < 0) {
      id_of_root[root] = static_cast<int>(out.cluster_color.size());
      out.cluster_color.push_back(c[i]);
    }
    out.label[i] = id_of_root[root];
  }
  return out;
}

CrossingProbe::CrossingProbe(std::shared_ptr<const LatticeDomain> d, std::span<const HexCoord> from_arc,
                             std::span<const HexCoord> to_arc)
    : domain_(std::move(d)), from_(domain_->size(), 0), to_(domain_->size(), 0) {
  auto mark = [this](std::span<const HexCoord> arc, std::vector<char>& mask) {
    for (const auto& h : arc) {
      for (int k = 0; k < 6; ++k) {
        const int i = domain_->index_of(neighbor(h, k));
        if (i >= 0) mask[i] = 1;
      }
    }
  };
  mark(from_arc, from_);
  mark(to_arc, to_);
}

bool CrossingProbe::operator()(std::span<const Color> colors, Color color) const {
  const int n = static_cast<int>(domain_->size());
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  stack.reserve(64);
  for (int i = 0; i < n; ++i) {
    if (from_[i] && colors[i] == color) {
      seen[i] = 1;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (to_[i]) return true;
    for (int j : domain_->neighbor_indices(i)) {
      if (j >= 0 && !seen[j] && colors[j] == color) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  }
  return false;
}

bool has_crossing(const Coloring& c, std::span<const HexCoord> from_arc, std::span<const HexCoord> to_arc,
                  Color color) {
  return CrossingProbe(c.domain_ptr(), from_arc, to_arc)(c.colors(), color);
}

nlohmann::json coloring_to_json(const Coloring& c, std::optional<std::uint64_t> seed) {
  std::string bits;
  bits.reserve(c.colors().size());
  for (Color col : c.colors()) bits.push_back(col == Color::Yellow ? '1' : '0');
  nlohmann::json j{{"generator", kGeneratorName}, {"bits", bits}, {"domain", domain_to_json(c.domain())}};
  if (seed) j["seed"] = *seed;
  return j;
}

std::string coloring_to_csv(const Coloring& c) {
  std::ostringstream os;
  os << "q,r,yellow\n";
  for (std::size_t i = 0; i < c.colors().size(); ++i) {
    const auto& h = c.domain().hexes()[i];
    os << h.q << ',' << h.r << ',' << (c.colors()[i] == Color::Yellow ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace percolab
