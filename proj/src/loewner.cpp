#include "percolab/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "percolab/error.hpp"
#include "percolab/stats.hpp"

namespace percolab {

double DrivingSample::at(double t) const {
  if (times.empty()) throw Error(ErrorCode::InsufficientData, "empty driving sample");
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - times.begin());
  const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
  return values[k - 1] + w * (values[k] - values[k - 1]);
}

Complex upper_sqrt(Complex s, Complex reference) {
  // Principal square root in real arithmetic; std::sqrt on complex is several
  // times slower and this is the inner loop of both slit-map compositions.
  const double a = s.real(), b = s.imag();
  const double t = std::sqrt(0.5 * (std::sqrt(a * a + b * b) + std::abs(a)));
  Complex w;
  if (t == 0.0) w = 0.0;
  else if (a >= 0.0) w = {t, b / (2.0 * t)};
  else w = {std::abs(b) / (2.0 * t), std::copysign(t, b)};
  if (w.imag() < 0.0) w = -w;
  if (w.imag() == 0.0 && (w.real() < 0.0) != (reference.real() < 0.0)) w = -w;
  return w;
}

namespace {

// u + sqrt((z - u)^2 + c) on the upper branch, in real arithmetic (complex
// multiplication goes through a slow library call without -ffast-math).
inline Complex slit_step(Complex z, double u, double c) {
  const double x = z.real() - u, y = z.imag();
  return u + upper_sqrt({x * x - y * y + c, 2.0 * x * y}, {x, y});
}

}  // namespace

CurveR2 forward_trace(const DrivingSample& d, double max_relative_step) {
  if (d.times.size() != d.values.size() || d.times.empty()) {
    throw Error(ErrorCode::ConfigError, "driving sample needs matching, nonempty times and values");
  }
  const std::size_t n = d.size();
  const double limit = max_relative_step * d.t_max();
  for (std::size_t k = 1; k < n; ++k) {
    const double dt = d.times[k] - d.times[k - 1];
    if (!(dt > 0.0)) throw Error(ErrorCode::StepTooLarge, "capacity times must increase");
    if (dt > limit * (1.0 + 1e-12)) throw Error(ErrorCode::StepTooLarge, "capacity step exceeds the configured maximum");
  }
  CurveR2 curve;
  curve.points.resize(n);
  curve.points[0] = {d.values.front(), 0.0};
  // Tips are independent; composing several at once keeps the pipeline busy.
  constexpr std::size_t kLanes = 8;
  for (std::size_t m0 = 1; m0 < n; m0 += kLanes) {
    const std::size_t lanes = std::min(kLanes, n - m0);
    Complex z[kLanes];
    for (std::size_t j = 0; j < lanes; ++j) z[j] = d.values[m0 + j];
    for (std::size_t k = m0 + lanes - 1; k >= 1; --k) {
      const double c = -4.0 * (d.times[k] - d.times[k - 1]);
      for (std::size_t j = 0; j < lanes; ++j) {
        if (k <= m0 + j) z[j] = slit_step(z[j], d.values[k], c);
      }
    }
    for (std::size_t j = 0; j < lanes; ++j) curve.points[m0 + j] = z[j];
  }
  return curve;
}

Zipper::Zipper(double base) {
  driving_.times.push_back(0.0);
  driving_.values.push_back(base);
}

Complex Zipper::map(Complex z) const {
  for (std::size_t k = 0; k < u_.size(); ++k) {
    z = slit_step(z, u_[k], 4.0 * dt_[k]);
  }
  return z;
}

void Zipper::append(Complex z) {
  if (!(z.imag() > 0.0)) {
    throw Error(ErrorCode::NonPositiveIncrement, "curve point mapped onto the real axis");
  }
  const double dt = z.imag() * z.imag() / 4.0;
  u_.push_back(z.real());
  dt_.push_back(dt);
  time_ += dt;
  driving_.times.push_back(time_);
  driving_.values.push_back(z.real());
}

double Zipper::push(Complex p) {
  append(map(p));
  return time_;
}

double Zipper::push(std::span<const Complex> points) {
  constexpr std::size_t kLanes = 8;
  for (std::size_t i0 = 0; i0 < points.size(); i0 += kLanes) {
    const std::size_t lanes = std::min(kLanes, points.size() - i0);
    Complex z[kLanes];
    for (std::size_t j = 0; j < lanes; ++j) z[j] = points[i0 + j];
    for (std::size_t k = 0; k < u_.size(); ++k) {
      const double c = 4.0 * dt_[k];
      for (std::size_t j = 0; j < lanes; ++j) z[j] = slit_step(z[j], u_[k], c);
    }
    for (std::size_t j = 0; j < lanes; ++j) {
      append(z[j]);
      for (std::size_t l = j + 1; l < lanes; ++l) z[l] = slit_step(z[l], u_.back(), 4.0 * dt_.back());
    }
  }
  return time_;
}

DrivingSample extract_driving(const CurveR2& c) {
  if (c.points.empty()) throw Error(ErrorCode::InsufficientData, "empty curve");
  const Complex base = c.points.front();
  if (std::abs(base.imag()) > 1e-12 * std::max(1.0, std::abs(base))) {
    throw Error(ErrorCode::ConfigError, "curve must start on the real axis");
  }
  Zipper zip(base.real());
  zip.push(std::span<const Complex>(c.points).subspan(1));
  return zip.driving();
}

double swallow_time(Complex z, const DrivingSample& d) {
  const double t_end = d.t_max();
  Complex g = z;
  double t = 0.0;
  auto rhs = [&](double s, Complex w) { return 2.0 / (w - d.at(s)); };
  const double capture = 1e-7 * std::max(1.0, std::abs(z));
  while (t < t_end) {
    const double gap = std::abs(g - d.at(t));
    if (gap < capture || g.imag() <= 0.0) return t;
    // |dg/dt| = 2/gap; a step of gap^2/200 moves g by at most 1% of the gap.
    const double h = std::min(t_end - t, std::max(gap * gap / 200.0, 1e-15));
    const Complex k1 = rhs(t, g);
    const Complex k2 = rhs(t + h / 2, g + h / 2 * k1);
    const Complex k3 = rhs(t + h / 2, g + h / 2 * k2);
    const Complex k4 = rhs(t + h, g + h * k3);
    g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return std::abs(g - d.at(t_end)) < capture ? t_end : std::numeric_limits<double>::infinity();
}

DrivingSample brownian_driving(double kappa, double t_max, std::size_t steps, std::uint64_t seed) {
  if (steps == 0 || !(t_max > 0.0) || kappa < 0.0) throw Error(ErrorCode::ConfigError, "bad Brownian driving parameters");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double dt = t_max / static_cast<double>(steps);
  const double sd = std::sqrt(kappa * dt);
  DrivingSample d;
  d.times.reserve(steps + 1);
  d.values.reserve(steps + 1);
  d.times.push_back(0.0);
  d.values.push_back(0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    d.times.push_back(t_max * static_cast<double>(k) / static_cast<double>(steps));
    d.values.push_back(d.values.back() + sd * normal(rng));
  }
  return d;
}

DrivingSample rescale(const DrivingSample& d, double lambda) {
  DrivingSample out;
  const double s = 1.0 / std::sqrt(lambda);
  for (std::size_t k = 0; k < d.size(); ++k) {
    out.times.push_back(d.times[k] / lambda);
    out.values.push_back(s * d.values[k]);
  }
  return out;
}

namespace {

double kappa_slope(const std::vector<std::vector<double>>& values, const std::vector<std::size_t>& rows,
                   const std::vector<double>& grid) {
  double num = 0.0, den = 0.0;
  std::vector<double> column(rows.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) column[i] = values[rows[i]][j];
    num += grid[j] * stats::variance(column);
    den += grid[j] * grid[j];
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

KappaEstimate estimate_kappa(const std::vector<DrivingSample>& samples, const std::vector<double>& grid,
                             double level, std::size_t resamples, std::uint64_t seed) {
  if (grid.empty()) throw Error(ErrorCode::InsufficientData, "empty time grid");
  const double t_top = *std::max_element(grid.begin(), grid.end());
  std::vector<std::vector<double>> values;
  for (const auto& s : samples) {
    if (s.size() < 2 || s.t_max() < t_top) continue;
    std::vector<double> row;
    row.reserve(grid.size());
    for (double t : grid) row.push_back(s.at(t) - s.values.front());
    values.push_back(std::move(row));
  }
  if (values.size() < 2) throw Error(ErrorCode::InsufficientData, "fewer than two samples reach the largest grid time");

  KappaEstimate est;
  est.level = level;
  est.n_paths = values.size();
  est.t_max = t_top;
  est.method = "variance slope through origin; percentile bootstrap over paths";
  std::vector<std::size_t> all(values.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  est.kappa_hat = kappa_slope(values, all, grid);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<double> boot;
  boot.reserve(resamples);
  std::vector<std::size_t> rows(values.size());
  for (std::size_t b = 0; b < resamples; ++b) {
    for (auto& r : rows) r = pick(rng);
    boot.push_back(kappa_slope(values, rows, grid));
  }
  std::sort(boot.begin(), boot.end());
  if (boot.empty()) {
    est.lower = est.upper = est.kappa_hat;
  } else {
    const double tail = (1.0 - level) / 2.0;
    auto quantile = [&](double q) {
      const double pos = q * static_cast<double>(boot.size() - 1);
      const std::size_t i = static_cast<std::size_t>(pos);
      const double w = pos - static_cast<double>(i);
      return i + 1 < boot.size() ? boot[i] * (1 - w) + boot[i + 1] * w : boot[i];
    };
    est.lower = std::min(quantile(tail), est.kappa_hat);
    est.upper = std::max(quantile(1.0 - tail), est.kappa_hat);
  }
  return est;
}

IncrementReport increment_tests(const std::vector<DrivingSample>& samples, double t_max, int levels, double alpha) {
  std::vector<const DrivingSample*> usable;
  for (const auto& s : samples) {
    if (s.size() >= 2 && s.t_max() >= t_max) usable.push_back(&s);
  }
  if (usable.size() < 2 || levels < 1) throw Error(ErrorCode::InsufficientData, "not enough samples reach t_max");

  IncrementReport report;
  report.alpha = alpha;
  std::vector<std::vector<double>> scaled_by_lag;  // increments / sqrt(lag), disjoint path subsets
  for (int j = 1; j <= levels; ++j) {
    const std::size_t count = std::size_t{1} << j;
    const double h = t_max / static_cast<double>(count);
    std::vector<double> all, first, second, products, subset;
    std::vector<std::vector<double>> by_position(count);
    for (std::size_t p = 0; p < usable.size(); ++p) {
      const DrivingSample& s = *usable[p];
      double prev_value = s.at(0.0), prev_inc = 0.0;
      for (std::size_t k = 1; k <= count; ++k) {
        const double v = s.at(h * static_cast<double>(k));
        const double inc = v - prev_value;
        prev_value = v;
        all.push_back(inc);
        by_position[k - 1].push_back(inc);
        (k <= count / 2 ? first : second).push_back(inc);
        if (k > 1) products.push_back(prev_inc * inc);
        prev_inc = inc;
        if (p % static_cast<std::size_t>(levels) == static_cast<std::size_t>(j - 1)) subset.push_back(inc / std::sqrt(h));
      }
    }
    scaled_by_lag.push_back(std::move(subset));

    const double var = stats::variance(all);
    const double n = static_cast<double>(all.size());
    if (var <= 0.0) {
      // Degenerate increments cannot come from a Brownian motion.
      for (const char* name : {"mean_zero", "normality", "independence", "stationarity"}) {
        report.tests.push_back({name, h, std::numeric_limits<double>::infinity(), 0.0});
      }
      continue;
    }
    const double z_mean = stats::mean(all) / std::sqrt(var / n);
    report.tests.push_back({"mean_zero", h, z_mean, stats::normal_two_sided_p(z_mean)});
    // Shape only: each time window is standardized on its own so that a
    // variance drift shows up in the stationarity test, not here.
    std::vector<double> standardized;
    standardized.reserve(all.size());
    bool flat_window = false;
    for (const auto& w : by_position) {
      const double m = stats::mean(w), sd = std::sqrt(stats::variance(w));
      if (sd <= 0.0) flat_window = true;
      for (double x : w) standardized.push_back(sd > 0.0 ? (x - m) / sd : 0.0);
    }
    const double jb = flat_window ? std::numeric_limits<double>::infinity() : stats::jarque_bera_statistic(standardized);
    report.tests.push_back({"normality", h, jb, std::isinf(jb) ? 0.0 : stats::chi2_sf(jb, 2.0)});
    double sum = 0.0, sum_sq = 0.0;
    for (double x : products) {
      sum += x;
      sum_sq += x * x;
    }
    const double s_ind = sum_sq > 0.0 ? sum / std::sqrt(sum_sq) : std::numeric_limits<double>::infinity();
    report.tests.push_back({"independence", h, s_ind, stats::normal_two_sided_p(s_ind)});
    const double v1 = stats::variance(first), v2 = stats::variance(second);
    const double ratio = v2 > 0.0 ? v1 / v2 : std::numeric_limits<double>::infinity();
    report.tests.push_back({"stationarity", h, ratio,
                            stats::f_two_sided_p(ratio, static_cast<double>(first.size() - 1),
                                                 static_cast<double>(second.size() - 1))});
  }
  if (levels >= 2) {
    bool enough = std::all_of(scaled_by_lag.begin(), scaled_by_lag.end(), [](const auto& g) { return g.size() >= 2; });
    if (enough) report.tests.push_back({"variance_proportional_to_lag", 0.0, 0.0, stats::bartlett_p(scaled_by_lag)});
  }
  for (const auto& t : report.tests) {
    if (t.p_value < alpha) ++report.rejections;
  }
  report.budget = stats::false_positive_budget(report.tests.size(), alpha);
  return report;
}

std::pair<std::size_t, std::size_t> IncrementReport::rejections_among(const std::vector<std::string>& names) const {
  std::size_t m = 0, rejected = 0;
  for (const auto& t : tests) {
    if (std::find(names.begin(), names.end(), t.name) == names.end()) continue;
    ++m;
    if (t.p_value < alpha) ++rejected;
  }
  return {rejected, stats::false_positive_budget(m, alpha)};
}

std::string driving_to_csv(const DrivingSample& d) {
  std::ostringstream os;
  os.precision(17);
  os << "t,U\n";
  for (std::size_t k = 0; k < d.size(); ++k) os << d.times[k] << ',' << d.values[k] << '\n';
  return os.str();
}

DrivingSample driving_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  DrivingSample d;
  std::getline(is, line);
  if (line != "t,U") throw Error(ErrorCode::ConfigError, "driving CSV must start with header t,U");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ConfigError, "malformed driving CSV row");
    d.times.push_back(std::stod(line.substr(0, comma)));
    d.values.push_back(std::stod(line.substr(comma + 1)));
  }
  return d;
}

nlohmann::json to_json(const KappaEstimate& k) {
  return {{"kappa_hat", k.kappa_hat}, {"confidence", {k.lower, k.upper}}, {"level", k.level},
          {"n_paths", k.n_paths},     {"t_max", k.t_max},                   {"method", k.method}};
}

nlohmann::json to_json(const IncrementReport& r) {
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& t : r.tests) {
    tests.push_back({{"name", t.name}, {"lag", t.lag},
                     {"statistic", std::isfinite(t.statistic) ? nlohmann::json(t.statistic) : nlohmann::json(nullptr)},
                     {"p_value", t.p_value}});
  }
  return {{"alpha", r.alpha}, {"rejections", r.rejections}, {"budget", r.budget}, {"passed", r.passed()},
          {"tests", tests}};
}

}  // namespace percolab
