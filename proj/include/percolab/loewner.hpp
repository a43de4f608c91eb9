#pragma once

// Chordal Loewner evolution in the upper half-plane with the normalization
// g_t(z) = z + 2t/z + O(1/z^2).  Curves are discretized by vertical-slit
// elementary maps: over a capacity step dt with constant driving u,
//   g(z) = u + sqrt((z - u)^2 + 4 dt),   f(w) = g^{-1}(w) = u + sqrt((w - u)^2 - 4 dt).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace percolab {

using Complex = std::complex<double>;

/// Driving function sampled at capacity times; times[0] = 0.
struct DrivingSample {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
  double t_max() const { return times.empty() ? 0.0 : times.back(); }
  /// Linear interpolation; clamps outside [0, t_max].
  double at(double t) const;
};

/// Polyline from a point on the real axis into the closed upper half-plane.
struct CurveR2 {
  std::vector<Complex> points;
  bool half_plane = true;
};

/// Branch of sqrt(s) continuing the upper half-plane: Im >= 0, and on the real
/// axis the sign of Re(reference).
Complex upper_sqrt(Complex s, Complex reference);

/// Tips f_1 o ... o f_n(U(t_n)) for n = 0..size-1, with step n driven by the
/// constant U(t_n).  Throws StepTooLarge when times are not increasing or a
/// step exceeds max_relative_step * t_max.
CurveR2 forward_trace(const DrivingSample& d, double max_relative_step = 1.0);

/// Zipper inversion of a polyline starting on the real axis: each new point
/// is mapped through the accumulated slit maps and read off as the tip of
/// the next vertical slit.  U(0) is the real part of the first point.
/// Throws NonPositiveIncrement when a point lands on the real axis.
DrivingSample extract_driving(const CurveR2& c);

/// Incremental form of extract_driving.
class Zipper {
 public:
  explicit Zipper(double base = 0.0);

  /// Maps p and appends its slit; returns the new capacity time.
  double push(Complex p);
  /// Pushes points in order; equivalent to repeated single pushes.
  double push(std::span<const Complex> points);
  double time() const { return time_; }
  const DrivingSample& driving() const { return driving_; }
  /// Image of z under the accumulated map g_t.
  Complex map(Complex z) const;

 private:
  void append(Complex mapped);

  std::vector<double> u_, dt_;
  double time_ = 0.0;
  DrivingSample driving_;
};

/// Swallowing time T(z) of the Loewner ODE dg/dt = 2 / (g - U(t)), g_0 = z,
/// integrated with adaptive RK4 up to d.t_max(); +infinity when z survives.
double swallow_time(Complex z, const DrivingSample& d);

/// sqrt(kappa) times a standard Brownian motion on a uniform grid of `steps`
/// capacity steps up to t_max.
DrivingSample brownian_driving(double kappa, double t_max, std::size_t steps, std::uint64_t seed);

/// lambda^{-1/2} U(lambda t) on t in [0, t_max / lambda].
DrivingSample rescale(const DrivingSample& d, double lambda);

struct KappaEstimate {
  double kappa_hat = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.99;
  std::size_t n_paths = 0;
  double t_max = 0.0;
  std::string method;
};

/// Least-squares slope through the origin of the sample variance of U(t)
/// against t over the grid; percentile bootstrap interval over paths.
/// Samples shorter than the largest grid time are ignored; throws
/// InsufficientData when fewer than two remain.
KappaEstimate estimate_kappa(const std::vector<DrivingSample>& samples, const std::vector<double>& grid,
                             double level = 0.99, std::size_t resamples = 1000, std::uint64_t seed = 1);

struct IncrementTest {
  std::string name;
  double lag = 0.0;  ///< 0 for tests spanning all lags
  double statistic = 0.0;
  double p_value = 1.0;
};

struct IncrementReport {
  std::vector<IncrementTest> tests;
  double alpha = 0.01;
  std::size_t rejections = 0;
  std::size_t budget = 0;  ///< rejections expected from chance alone (tail 1e-3)
  bool passed() const { return rejections <= budget; }
  /// Rejections among the tests with the given names, and their budget.
  std::pair<std::size_t, std::size_t> rejections_among(const std::vector<std::string>& names) const;
};

/// Tests the increments of U over dyadic lags t_max / 2^j, j = 1..levels:
/// mean zero, normality (Jarque-Bera on increments standardized per time
/// window), lag-1 independence (self-normalized sum of products of
/// consecutive increments), equal variance in the first and second half of
/// the time range, and variance proportional to the lag (Bartlett across
/// lags on disjoint path subsets).
IncrementReport increment_tests(const std::vector<DrivingSample>& samples, double t_max, int levels = 4,
                                double alpha = 0.01);

std::string driving_to_csv(const DrivingSample& d);
DrivingSample driving_from_csv(const std::string& text);
nlohmann::json to_json(const KappaEstimate& k);
nlohmann::json to_json(const IncrementReport& r);

}  // namespace percolab
