#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "percolab/conformal_cardy.hpp"
#include "percolab/error.hpp"
#include "percolab/harness.hpp"

using namespace percolab;

namespace {

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> mesh;
  std::optional<std::string> out;
  std::optional<int> threads;
  bool quiet = false;
};

void add_run_options(CLI::App* sub, RunOptions& o) {
  sub->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--samples", o.samples, "number of samples");
  sub->add_option("--mesh", o.mesh, "lattice spacing");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--threads", o.threads, "worker threads");
  sub->add_flag("--quiet", o.quiet, "print only the verdict");
}

int run(const std::string& kind, const RunOptions& o) {
  nlohmann::json j = nlohmann::json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ConfigError, std::string("cannot parse configuration: ") + e.what());
    }
    if (j.contains("kind") && j.at("kind") != kind) {
      throw Error(ErrorCode::ConfigError, "configuration is for '" + j.at("kind").get<std::string>() + "'");
    }
  }
  j["kind"] = kind;
  if (o.seed) j["seed"] = *o.seed;
  if (o.samples) j["samples"] = *o.samples;
  if (o.mesh) j["mesh"] = *o.mesh;
  if (o.out) j["out"] = *o.out;
  if (o.threads) j["threads"] = *o.threads;
  const ExperimentConfig cfg = ExperimentConfig::from_json(j);
  const ExperimentReport report = run_experiment(cfg);
  const auto dir = write_report(report);
  if (!o.quiet) {
    for (const auto& c : report.checks) {
      std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.value << " (threshold " << c.threshold
                << (c.detail.empty() ? "" : ", " + c.detail) << ")\n";
    }
  }
  std::cout << kind << ": " << (report.passed() ? "PASS" : "FAIL") << ", report in " << dir.string() << '\n';
  return report.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical site percolation on the triangular lattice: experiments and Cardy evaluation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunOptions opts;
  const std::vector<std::pair<std::string, std::string>> kinds = {
      {"crossing", "crossing probabilities against Cardy's formula"},
      {"hitting", "exit-point law of the half-plane exploration"},
      {"kappa", "driving function and kappa estimate of the exploration"},
      {"loops", "algorithmic loop construction against direct extraction"},
      {"arms", "three-arm probabilities in semi-annuli"},
      {"pasting", "excursion pasting against chordal exploration"}};
  std::string chosen;
  for (const auto& [name, help] : kinds) {
    auto* sub = app.add_subcommand(name, help);
    add_run_options(sub, opts);
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  std::optional<double> eta;
  std::vector<double> angles;
  auto* cardy = app.add_subcommand("cardy-eval", "evaluate Cardy's formula");
  cardy->add_option("--eta", eta, "cross-ratio in [0, 1]");
  cardy->add_option("--angles", angles, "four boundary angles on the unit circle, in degrees")->expected(4);
  cardy->callback([&chosen] { chosen = "cardy-eval"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (chosen == "cardy-eval") {
      if (eta.has_value() == !angles.empty()) {
        throw Error(ErrorCode::ConfigError, "give exactly one of --eta or --angles");
      }
      double x = eta.value_or(0.0);
      if (!angles.empty()) {
        Complex w[4];
        for (int k = 0; k < 4; ++k) w[k] = std::polar(1.0, angles[k] * std::numbers::pi / 180.0);
        x = cross_ratio(w[0], w[1], w[2], w[3]);
      }
      nlohmann::json out = to_json(cardy_F(x));
      out["eta"] = x;
      std::cout << out.dump(2) << '\n';
      return 0;
    }
    return run(chosen, opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
