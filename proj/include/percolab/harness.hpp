#pragma once

// Experiment configuration, drivers and reports.
//
// Lengths in a configuration are physical: a disc of radius 1 at mesh 0.01
// is 100 lattice spacings across its radius.  Capacity times scale with the
// square of length.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "percolab/loewner.hpp"

namespace percolab {

inline constexpr const char* kVersion = "percolab 0.1.0";

struct ExperimentConfig {
  std::string kind;  ///< crossing, hitting, kappa, loops, arms, pasting
  nlohmann::json domain = nlohmann::json::object();
  double mesh = 1.0;
  std::size_t samples = 1;
  std::uint64_t seed = 1;
  std::string out = "runs";
  int threads = 1;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();

  /// Validates and fills defaults; throws ConfigError.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  /// Stable 16-hex-digit hash of to_json().dump().
  std::string hash() const;

  double tolerance(const std::string& name, double fallback) const;
  template <class T>
  T param(const std::string& name, T fallback) const {
    return params.contains(name) ? params.at(name).get<T>() : fallback;
  }
};

/// The acceptance-scale configuration of each experiment kind.
ExperimentConfig default_config(const std::string& kind);

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ExperimentReport {
  ExperimentConfig config;
  nlohmann::json results = nlohmann::json::object();
  std::vector<Check> checks;
  double runtime_seconds = 0.0;
  std::map<std::string, std::string> tables;  ///< file name -> CSV text

  bool passed() const;
  nlohmann::json to_json() const;
};

ExperimentReport run_crossing_experiment(const ExperimentConfig& cfg);
ExperimentReport run_hitting_experiment(const ExperimentConfig& cfg);
ExperimentReport run_kappa_experiment(const ExperimentConfig& cfg);
ExperimentReport run_loops_equivalence(const ExperimentConfig& cfg);
ExperimentReport run_arm_experiment(const ExperimentConfig& cfg);
ExperimentReport run_excursion_pasting(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Writes report.json and the CSV tables into <out>/<kind>-<hash>/ and
/// returns that directory.
std::filesystem::path write_report(const ExperimentReport& report);

/// Runs body(i) for i in [0, n) on `threads` workers.  Work items must only
/// write to their own slots; results are then independent of scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

/// One exploration of the half-plane lattice (rows r >= 0 are sites, colored
/// from `seed` at p = 1/2), zipped into a driving function as it goes.
struct HalfPlaneDriving {
  DrivingSample driving;
  bool margin_breached = false;
  std::size_t steps = 0;
  std::size_t skipped_points = 0;  ///< vertices mapped onto the real axis
};

struct HalfPlaneDrivingOptions {
  double t_max = 1000.0;      ///< capacity in lattice units (mesh 1)
  double half_width = 400.0;  ///< strip half width in lattice units
  double height = 800.0;
  double margin = 100.0;  ///< vertices closer than this to a side abort the sample
  std::size_t stride = 1;  ///< zip every stride-th vertex
  double lift = 0.25;      ///< vertical offset keeping boundary touches off the real axis
};

HalfPlaneDriving half_plane_driving(std::uint64_t seed, const HalfPlaneDrivingOptions& opt);

/// Exit angle in [0, pi] of the half-plane exploration from the semicircle of
/// the given radius (lattice units) around its origin.  With `mirrored` the
/// coloring is reflected across the vertical axis and color-swapped.
double half_plane_exit_angle(std::uint64_t seed, double radius, bool mirrored = false);

}  // namespace percolab
