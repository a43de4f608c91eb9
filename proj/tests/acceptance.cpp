// Runs every acceptance criterion at full scale and prints one verdict line
// per criterion.  Reports are written under ./acceptance-runs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "percolab/conformal_cardy.hpp"
#include "percolab/harness.hpp"
#include "percolab/loewner.hpp"
#include "percolab/loop_ensemble.hpp"
#include "percolab/metrics.hpp"

using namespace percolab;

namespace {

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

const Check* check_named(const ExperimentReport& r, const std::string& prefix) {
  for (const auto& c : r.checks) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

ExperimentReport run_and_write(ExperimentConfig cfg) {
  cfg.out = "acceptance-runs";
  ExperimentReport r = run_experiment(cfg);
  write_report(r);
  return r;
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.passed = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.passed) ++failures;
  std::printf("[%s] %2d %s: %s (%.1f s)\n", v.passed ? "PASS" : "FAIL", id, title.c_str(), v.detail.c_str(), secs);
  std::fflush(stdout);
}

// Minimum over monotone couplings of the maximal leash, by enumeration.
double brute_force_frechet(const std::vector<Point>& a, const std::vector<Point>& b) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double worst) {
    worst = std::max(worst, std::abs(a[i] - b[j]));
    if (i + 1 == a.size() && j + 1 == b.size()) {
      best = std::min(best, worst);
      return;
    }
    if (i + 1 < a.size()) walk(i + 1, j, worst);
    if (j + 1 < b.size()) walk(i, j + 1, worst);
    if (i + 1 < a.size() && j + 1 < b.size()) walk(i + 1, j + 1, worst);
  };
  walk(0, 0, 0.0);
  return best;
}

std::vector<Point> polygon(int n, double radius, Point c = 0.0) {
  std::vector<Point> p;
  for (int k = 0; k < n; ++k) p.push_back(c + std::polar(radius, 2 * std::numbers::pi * k / n));
  return p;
}

}  // namespace

int main() {
  report(1, "loop construction equals direct extraction", [] {
    Verdict v;
    const auto r = run_and_write(default_config("loops"));
    const auto& res = r.results;
    v.require(r.passed(), std::to_string(res.at("exhaustive_configurations").get<std::size_t>()) +
                              " exhaustive configurations on " +
                              std::to_string(res.at("exhaustive_domains").get<std::size_t>()) + " domains, " +
                              std::to_string(res.at("exhaustive_violations").get<std::size_t>()) + " violations");
    v.require(res.at("sampled_violations") == 0 && res.at("sampled_configurations") == 1000,
              "1000 sampled 50x50 rhombus configurations, " +
                  std::to_string(res.at("sampled_violations").get<std::size_t>()) + " violations");
    v.require(r.runtime_seconds < 120.0, "runtime " + fmt(r.runtime_seconds, 3) + " s < 120 s");
    return v;
  });

  report(2, "crossing probabilities match Cardy's formula", [] {
    Verdict v;
    const auto r = run_and_write(default_config("crossing"));
    for (const auto& a : r.results.at("arcs")) {
      const double err = a.at("abs_error");
      const bool symmetric = std::abs(a.at("eta").get<double>() - 0.5) < 1e-12;
      const double tol = symmetric ? 0.01 : 0.015;
      v.require(err <= tol, a.at("name").get<std::string>() + " p=" + fmt(a.at("estimate")) +
                                " F=" + fmt(a.at("prediction")) + " err " + fmt(err, 3) + " <= " + fmt(tol));
    }
    v.require(r.runtime_seconds < 900.0, "runtime " + fmt(r.runtime_seconds, 3) + " s");
    return v;
  });

  report(3, "per-configuration crossing duality on a rhombus", [] {
    Verdict v;
    ExperimentConfig cfg = default_config("crossing");
    cfg.domain = {{"shape", "rhombus"}, {"L", 50}};
    cfg.mesh = 1.0;
    cfg.samples = 10000;
    const auto r = run_and_write(cfg);
    const auto& row = r.results.at("arcs").at(0);
    v.require(row.at("duality_violations") == 0,
              "Blue left-right XOR Yellow top-bottom: " +
                  std::to_string(row.at("duality_violations").get<std::size_t>()) + " violations in 10000");
    return v;
  });

  report(4, "Cardy function identities", [] {
    Verdict v;
    v.require(cardy_F(0.0).probability == 0.0 && cardy_F(1.0).probability == 1.0, "F(0) = 0 and F(1) = 1");
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double eta = (k + 0.5) / 1000.0;
      worst = std::max(worst, std::abs(cardy_F(eta).probability + cardy_F(1.0 - eta).probability - 1.0));
    }
    v.require(worst <= 1e-10, "max |F(eta) + F(1-eta) - 1| = " + fmt(worst, 3));
    const double oracle = 3.0 * boost::math::tgamma(2.0 / 3) / std::pow(boost::math::tgamma(1.0 / 3), 2);
    const double gap = std::abs(cardy_prefactor() - oracle);
    v.require(gap <= 1e-10, "prefactor " + fmt(cardy_prefactor(), 12) + " vs gamma oracle, gap " + fmt(gap, 3));
    return v;
  });

  report(5, "half-plane hitting distribution", [] {
    Verdict v;
    const auto r = run_and_write(default_config("hitting"));
    const double ks = r.results.at("ks_distance");
    v.require(ks <= 0.03, "N=5000, radius 100, KS " + fmt(ks, 3) + " <= 0.03");
    v.require(r.results.at("mirror_violations") == 0, "mirror symmetry exact");
    v.require(r.runtime_seconds < 1200.0, "runtime " + fmt(r.runtime_seconds, 3) + " s");
    return v;
  });

  ExperimentReport kappa;
  report(6, "kappa estimate of the exploration path", [&] {
    Verdict v;
    kappa = run_and_write(default_config("kappa"));
    const auto& k = kappa.results.at("kappa");
    const double hat = k.at("kappa_hat");
    v.require(hat >= 5.4 && hat <= 6.6,
              "N=2000, kappa_hat " + fmt(hat) + " in [5.4, 6.6], 99% CI [" + fmt(k.at("confidence")[0]) + ", " +
                  fmt(k.at("confidence")[1]) + "]");
    v.require(kappa.results.at("margin_breaches") == 0, "no hull within the side margin");
    for (const auto& s : kappa.results.at("synthetic")) {
      const double k0 = s.at("kappa_0"), lo = s.at("confidence")[0], hi = s.at("confidence")[1];
      v.require(lo <= k0 && k0 <= hi, "synthetic " + fmt(k0, 2) + " in [" + fmt(lo) + ", " + fmt(hi) + "]");
    }
    v.require(kappa.runtime_seconds < 2700.0, "runtime " + fmt(kappa.runtime_seconds, 3) + " s");
    return v;
  });

  report(7, "Brownian structure of the driving function", [&] {
    Verdict v;
    if (kappa.checks.empty()) throw std::runtime_error("kappa run missing");
    const Check* inc = check_named(kappa, "normality and independence");
    const Check* ramp = check_named(kappa, "deterministic ramp");
    v.require(inc && inc->passed, "normality/independence rejections " + fmt(inc ? inc->value : -1) +
                                      " <= budget " + fmt(inc ? inc->threshold : -1) + " at alpha 0.01");
    v.require(ramp && ramp->passed, "ramp rejections " + fmt(ramp ? ramp->value : -1) + " > budget " +
                                        fmt(ramp ? ramp->threshold : -1));
    return v;
  });

  report(8, "Loewner round trip", [] {
    Verdict v;
    CurveR2 slit;
    for (int k = 0; k <= 1000; ++k) slit.points.push_back(Complex(0.0, 2.0 * std::sqrt(k / 1000.0)));
    double slit_err = 0.0;
    for (double u : extract_driving(slit).values) slit_err = std::max(slit_err, std::abs(u));
    DrivingSample zero;
    for (int k = 0; k <= 1000; ++k) {
      zero.times.push_back(k / 1000.0);
      zero.values.push_back(0.0);
    }
    slit_err = std::max(slit_err, std::abs(forward_trace(zero).points.back() - Complex(0.0, 2.0)));
    v.require(slit_err <= 1e-8, "vertical slit error " + fmt(slit_err, 3));
    const double t_max = 1.0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const DrivingSample u = brownian_driving(6.0, t_max, 10000, derive_seed(7, seed));
      const DrivingSample w = extract_driving(forward_trace(u));
      for (std::size_t k = 0; k < u.size(); ++k) worst = std::max(worst, std::abs(u.values[k] - w.at(u.times[k])));
    }
    v.require(worst <= 1e-2 * std::sqrt(t_max), "100 Brownian drivings at step 1e-4, max error " + fmt(worst, 3));
    return v;
  });

  report(9, "excursion pasting matches the exploration path", [] {
    Verdict v;
    const auto r = run_and_write(default_config("pasting"));
    v.require(r.results.at("max_total_variation") == 0.0,
              "total variation 0 over " + std::to_string(r.results.at("configurations").get<std::size_t>()) +
                  " configurations on " + std::to_string(r.results.at("domains").get<std::size_t>()) +
                  " domains, identity rate " + fmt(r.results.at("identity_rate")));
    return v;
  });

  report(10, "three-arm probability decays", [] {
    Verdict v;
    const auto r = run_and_write(default_config("arms"));
    std::string table;
    for (const auto& row : r.results.at("table")) {
      table += fmt(row.at("ratio"), 3) + ":" + fmt(row.at("probability"), 4) + " ";
    }
    v.require(check_named(r, "probability strictly decreasing")->passed, "strictly decreasing " + table);
    v.require(r.results.at("log_log_slope").get<double>() < 0.0,
              "log-log slope " + fmt(r.results.at("log_log_slope")));
    return v;
  });

  report(11, "metric sanity", [] {
    Verdict v;
    const std::vector<Point> seg = {{0, 0}, {1, 0}, {2, 0}};
    std::vector<Point> moved(seg);
    for (auto& p : moved) p += Point(0.3, 0.4);
    v.require(curve_distance(seg, seg) == 0.0 && std::abs(curve_distance(seg, moved) - 0.5) < 1e-12,
              "identity and translate");
    const std::vector<Point> a = {{0, 0}, {1, 1}, {2, 0}}, b = {{0, 0.5}, {2, 0.5}, {1.5, -1}};
    v.require(std::abs(curve_distance(a, b) - brute_force_frechet(a, b)) < 1e-12, "3-point brute force");

    const auto hex = polygon(6, 1.0);
    std::vector<Point> rot(hex.begin() + 1, hex.end());
    rot.push_back(hex.front());
    const std::vector<Point> rev(hex.rbegin(), hex.rend());
    v.require(loop_distance(hex, rot) < 1e-12 && loop_distance(hex, rev) < 1e-12, "rotation and reversal");
    v.require(std::abs(loop_distance(hex, polygon(6, 1.01)) - 0.01) <= 1e-9, "scaled hexagon");

    const std::vector<std::vector<Point>> e = {hex, polygon(8, 0.5, Point(3, 0))}, one = {polygon(6, 1.2)};
    auto shifted = e;
    for (auto& l : shifted) {
      for (auto& p : l) p += Point(0.006, -0.008);
    }
    const double d0 = loop_distance(e[0], one[0]), d1 = loop_distance(e[1], one[0]);
    v.require(ensemble_distance(e, e) == 0.0 && ensemble_distance(e, shifted) <= 0.01 + 1e-12 &&
                  std::abs(ensemble_distance(e, one) - std::max(d0, d1)) < 1e-12,
              "ensemble examples");

    const double dc = domain_distance(polygon(360, 1.0), polygon(360, 1.01));
    v.require(dc >= 0.01 * (1 - 1e-3) && dc <= 0.01 * (1 + 1e-3), "concentric discs " + fmt(dc, 6));

    const auto circle = polygon(4000, 1.0);
    double previous = 1e9;
    std::string lattice;
    bool lattice_ok = true;
    for (int inv : {10, 20, 40}) {
      const double mesh = 1.0 / inv;
      const auto dom = build_domain(disc_hexes(inv), mesh);
      const auto loops = extract_loops_direct(uniform_coloring(dom, Color::Yellow));
      const double d = domain_distance(loops.loops.at(0).points(), circle);
      lattice_ok = lattice_ok && d <= 2.0 * mesh && d < previous;
      previous = d;
      lattice += fmt(d / mesh, 3) + " ";
    }
    v.require(lattice_ok, "lattice disc distance / mesh = " + lattice);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto curve = [&](int n) {
      std::vector<Point> p(n);
      for (auto& x : p) x = Point(u(rng), u(rng));
      return p;
    };
    int violations = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto x = curve(3 + t % 6), y = curve(3 + t % 5), z = curve(3 + t % 7);
      violations += curve_distance(x, z) > curve_distance(x, y) + curve_distance(y, z) + 1e-12;
    }
    v.require(violations == 0, "triangle inequality on 1000 triples, " + std::to_string(violations) + " violations");
    return v;
  });

  std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
