#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "percolab/hexlattice.hpp"

namespace percolab {

enum class Color : std::uint8_t { Blue = 0, Yellow = 1 };

constexpr Color flip(Color c) { return c == Color::Blue ? Color::Yellow : Color::Blue; }

/// Identification recorded in every report.
inline constexpr const char* kGeneratorName = "splitmix64-site-hash/v1";

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of replica `index` in a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// 64 random bits attached to site c under `seed`.  Depends only on (seed, q, r),
/// so colorings are stable under domain enlargement.
std::uint64_t site_bits(std::uint64_t seed, HexCoord c);

/// Blue with probability p.  The complemented stream flips every site at p = 1/2.
Color site_color(std::uint64_t seed, HexCoord c, double p, bool complemented = false);

/// Colors of the hexagons of a domain, plus optional pretend colors on the
/// boundary loop.
class Coloring {
 public:
  Coloring(std::shared_ptr<const LatticeDomain> domain, std::vector<Color> colors);

  const LatticeDomain& domain() const { return *domain_; }
  const std::shared_ptr<const LatticeDomain>& domain_ptr() const { return domain_; }

  Color operator[](int index) const { return colors_[index]; }
  std::span<const Color> colors() const { return colors_; }

  bool has_pretend() const { return pretend_.has_value(); }
  std::span<const Color> pretend() const { return *pretend_; }

  /// Domain hexagons report their color, boundary hexagons their pretend color.
  /// Throws ConfigError for anything else.
  Color at(HexCoord c) const;

  /// Domain hexagons report their color, every other hexagon `outer`.
  Color realized(HexCoord c, Color outer) const {
    const int i = domain_->index_of(c);
    return i >= 0 ? colors_[i] : outer;
  }

  Coloring with_pretend(std::vector<Color> pretend) const;
  /// Pretend colors Blue on positions [x, y) and Yellow on [y, x).
  Coloring with_arcs(int x, int y) const;
  Coloring complemented() const;

 private:
  std::shared_ptr<const LatticeDomain> domain_;
  std::vector<Color> colors_;
  std::optional<std::vector<Color>> pretend_;
};

Coloring sample_coloring(std::shared_ptr<const LatticeDomain> d, double p, std::uint64_t seed,
                         bool complemented = false);

Coloring uniform_coloring(std::shared_ptr<const LatticeDomain> d, Color c);

struct ClusterLabels {
  std::vector<int> label;            ///< by canonical hexagon index
  std::vector<Color> cluster_color;  ///< by cluster id
  std::size_t count() const { return cluster_color.size(); }
};

/// Maximal monochromatic connected components, ids assigned in canonical order.
ClusterLabels color_clusters(const Coloring& c);

/// True iff a T-path of `color` inside the domain joins a hexagon adjacent to
/// `from_arc` to a hexagon adjacent to `to_arc`.
bool has_crossing(const Coloring& c, std::span<const HexCoord> from_arc,
                  std::span<const HexCoord> to_arc, Color color);

/// Precomputed arc adjacency for evaluating the same crossing event on many
/// colorings of one domain.
class CrossingProbe {
 public:
  CrossingProbe(std::shared_ptr<const LatticeDomain> d, std::span<const HexCoord> from_arc,
                std::span<const HexCoord> to_arc);
  bool operator()(std::span<const Color> colors, Color color) const;

 private:
  std::shared_ptr<const LatticeDomain> domain_;
  std::vector<char> from_;
  std::vector<char> to_;
};

/// {"generator", "seed", "bits"} with bits[i] = '1' for Yellow, canonical order.
nlohmann::json coloring_to_json(const Coloring& c, std::optional<std::uint64_t> seed = {});
std::string coloring_to_csv(const Coloring& c);

}  // namespace percolab
