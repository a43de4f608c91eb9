#include "percolab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

#include "percolab/error.hpp"
#include "percolab/exploration.hpp"
#include "percolab/percolation.hpp"

namespace percolab {

namespace {

const std::set<std::string> kKinds = {"crossing", "hitting", "kappa", "loops", "arms", "pasting"};
const std::map<std::string, std::string> kKindAliases = {
    {"loops_equivalence", "loops"}, {"arm_decay", "arms"}, {"excursion_pasting", "pasting"}};
const std::map<std::string, std::string> kShapeAliases = {{"discApprox", "disc"}, {"stripHalfPlane", "strip"}};

std::string canonical(const std::map<std::string, std::string>& aliases, const std::string& name) {
  const auto it = aliases.find(name);
  return it == aliases.end() ? name : it->second;
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::ConfigError, "configuration must be a JSON object");
    ExperimentConfig cfg;
    cfg.kind = canonical(kKindAliases, j.at("kind").get<std::string>());
    if (!kKinds.count(cfg.kind)) throw Error(ErrorCode::ConfigError, "unknown experiment kind '" + cfg.kind + "'");
    const ExperimentConfig base = default_config(cfg.kind);
    cfg.domain = get_or(j, "domain", base.domain);
    cfg.mesh = get_or(j, "mesh", base.mesh);
    cfg.samples = get_or(j, "samples", base.samples);
    cfg.seed = get_or(j, "seed", base.seed);
    cfg.out = get_or(j, "out", base.out);
    cfg.threads = get_or(j, "threads", base.threads);
    cfg.params = base.params;
    if (j.contains("params")) cfg.params.merge_patch(j.at("params"));
    cfg.tolerances = base.tolerances;
    if (j.contains("tolerances")) cfg.tolerances.merge_patch(j.at("tolerances"));

    if (!(cfg.mesh > 0.0)) throw Error(ErrorCode::ConfigError, "mesh must be positive");
    if (cfg.samples < 1) throw Error(ErrorCode::ConfigError, "samples must be at least 1");
    if (cfg.threads < 1) throw Error(ErrorCode::ConfigError, "threads must be at least 1");
    if (!cfg.domain.is_object() || !cfg.domain.contains("shape")) {
      throw Error(ErrorCode::ConfigError, "domain needs a shape");
    }
    const std::string shape = canonical(kShapeAliases, cfg.domain.at("shape").get<std::string>());
    cfg.domain["shape"] = shape;
    if (shape != "disc" && shape != "rhombus" && shape != "strip") {
      throw Error(ErrorCode::ConfigError, "unknown domain shape '" + shape + "'");
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"kind", kind},       {"domain", domain}, {"mesh", mesh},       {"samples", samples},
          {"seed", seed},       {"out", out},       {"threads", threads}, {"params", params},
          {"tolerances", tolerances}};
}

std::string ExperimentConfig::hash() const {
  // FNV-1a over the canonical dump, excluding fields that do not affect results.
  nlohmann::json j = to_json();
  j.erase("out");
  j.erase("threads");
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double ExperimentConfig::tolerance(const std::string& name, double fallback) const {
  return tolerances.contains(name) ? tolerances.at(name).get<double>() : fallback;
}

ExperimentConfig default_config(const std::string& kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.mesh = 0.01;
  cfg.seed = 20240601;
  if (kind == "crossing") {
    cfg.domain = {{"shape", "disc"}, {"radius", 1.0}};
    cfg.samples = 100000;
    cfg.params = {{"arcs",
                   {{{"name", "quadrants"}, {"angles", {0, 90, 180, 270}}},
                    {{"name", "wide"}, {"angles", {0, 120, 180, 270}}},
                    {{"name", "narrow"}, {"angles", {0, 60, 180, 240}}}}}};
    cfg.tolerances = {{"symmetric", 0.01}, {"asymmetric", 0.015}, {"rhombus", 0.02}};
  } else if (kind == "hitting") {
    cfg.domain = {{"shape", "strip"}, {"width", 3.0}, {"height", 1.5}};
    cfg.samples = 5000;
    cfg.params = {{"radius", 1.0}, {"mirror_checks", 200}};
    cfg.tolerances = {{"ks", 0.03}};
  } else if (kind == "kappa") {
    cfg.domain = {{"shape", "strip"}, {"width", 8.0}, {"height", 8.0}};
    cfg.samples = 2000;
    cfg.params = {{"t_max", 0.1},
                  {"margin", 1.0},
                  {"stride", 1},
                  {"lift", 0.25},
                  {"grid_points", 10},
                  {"levels", 2},
                  {"bootstrap", 1000},
                  {"level", 0.99},
                  {"synthetic", {{"kappas", {2.0, 6.0, 8.0}}, {"paths", 400}, {"steps", 400}}}};
    cfg.tolerances = {{"kappa_low", 5.4}, {"kappa_high", 6.6}, {"alpha", 0.01}};
  } else if (kind == "loops") {
    cfg.domain = {{"shape", "rhombus"}, {"L", 50}};
    cfg.mesh = 1.0;
    cfg.samples = 1000;
    cfg.params = {{"exhaustive_max_size", 9}, {"extra_sizes", {10, 11, 12}}, {"extra_per_size", 6}};
  } else if (kind == "arms") {
    cfg.domain = {{"shape", "strip"}, {"width", 2.0}, {"height", 1.0}};
    cfg.samples = 10000;
    cfg.params = {{"inner_radius", 0.05}, {"ratios", {2, 4, 8, 16}}};
  } else if (kind == "pasting") {
    cfg.domain = {{"shape", "rhombus"}, {"L", 1}};
    cfg.mesh = 1.0;
    cfg.samples = 1;
    cfg.params = {{"exhaustive_max_size", 8}, {"extra_sizes", {9, 10, 11, 12, 13, 14}}, {"extra_per_size", 5}};
  } else {
    throw Error(ErrorCode::ConfigError, "unknown experiment kind '" + kind + "'");
  }
  return cfg;
}

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) {
    checks_json.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"threshold", c.threshold}, {"detail", c.detail}});
  }
  return {{"version", kVersion},
          {"generator", kGeneratorName},
          {"config", config.to_json()},
          {"config_hash", config.hash()},
          {"runtime_seconds", runtime_seconds},
          {"results", results},
          {"checks", checks_json},
          {"passed", passed()},
          {"conventions",
           {{"embedding", "pointy-top axial, center = mesh*(sqrt(3)*(q + r/2), 1.5*r)"},
            {"boundary_order", "counterclockwise from the smallest (q, r)"},
            {"p", "probability of Blue"},
            {"exploration", "Yellow on the left, Blue on the right"}}}};
}

std::filesystem::path write_report(const ExperimentReport& report) {
  const std::filesystem::path dir =
      std::filesystem::path(report.config.out) / (report.config.kind + "-" + report.config.hash());
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "report.json") << report.to_json().dump(2) << '\n';
  for (const auto& [name, text] : report.tables) std::ofstream(dir / name) << text;
  return dir;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1, threads), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

HalfPlaneDriving half_plane_driving(std::uint64_t seed, const HalfPlaneDrivingOptions& opt) {
  HalfPlaneDriving out;
  Zipper zip(0.0);
  const Point origin = half_plane_origin(1.0);
  const Complex lift(0.0, opt.lift);
  const std::size_t stride = std::max<std::size_t>(1, opt.stride);
  std::size_t count = 0;
  auto stop = [&](const std::vector<DirectedEdge>& edges) {
    const Point p = embed(edges.back().head(), 1.0) - origin;
    if (std::abs(p.real()) > opt.half_width - opt.margin || p.imag() > opt.height - opt.margin) {
      out.margin_breached = true;
      return true;
    }
    if (++count % stride != 0) return false;
    try {
      zip.push(p + lift);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonPositiveIncrement) throw;
      ++out.skipped_points;  // lands on the boundary of the zipped hull: no capacity
    }
    return zip.time() >= opt.t_max;
  };
  const auto edges = explore_half_plane([&](HexCoord h) { return site_color(seed, h, 0.5); }, stop, 50'000'000);
  out.steps = edges.size();
  out.driving = zip.driving();
  return out;
}

double half_plane_exit_angle(std::uint64_t seed, double radius, bool mirrored) {
  const Point origin = half_plane_origin(1.0);
  Point exit_point;
  auto stop = [&](const std::vector<DirectedEdge>& edges) {
    const Point p = embed(edges.back().head(), 1.0) - origin;
    if (std::abs(p) <= radius) return false;
    exit_point = p;
    return true;
  };
  auto color = [&](HexCoord h) {
    return mirrored ? flip(site_color(seed, half_plane_mirror(h), 0.5)) : site_color(seed, h, 0.5);
  };
  const std::size_t cap = static_cast<std::size_t>(50.0 * radius * radius + 1000.0);
  explore_half_plane(color, stop, cap);
  if (exit_point == Point()) throw Error(ErrorCode::NonTermination, "exploration did not leave the semicircle");
  return std::clamp(std::arg(exit_point), 0.0, std::numbers::pi);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind == "crossing") return run_crossing_experiment(cfg);
  if (cfg.kind == "hitting") return run_hitting_experiment(cfg);
  if (cfg.kind == "kappa") return run_kappa_experiment(cfg);
  if (cfg.kind == "loops") return run_loops_equivalence(cfg);
  if (cfg.kind == "arms") return run_arm_experiment(cfg);
  if (cfg.kind == "pasting") return run_excursion_pasting(cfg);
  throw Error(ErrorCode::ConfigError, "unknown experiment kind '" + cfg.kind + "'");
}

}  // namespace percolab
