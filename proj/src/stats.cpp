#include "percolab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>

#include "percolab/error.hpp"

namespace percolab::stats {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

double normal_two_sided_p(double z) {
  if (!std::isfinite(z)) return 0.0;
  return 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal(), std::abs(z)));
}

double chi2_sf(double x, double k) {
  if (!std::isfinite(x)) return 0.0;
  if (x <= 0.0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(k), x));
}

double f_two_sided_p(double ratio, double d1, double d2) {
  if (!std::isfinite(ratio) || ratio <= 0.0) return 0.0;
  const boost::math::fisher_f f(d1, d2);
  const double lower = boost::math::cdf(f, ratio);
  return std::min(1.0, 2.0 * std::min(lower, 1.0 - lower));
}

double kolmogorov_sf(double lambda) {
  if (lambda < 0.2) return 1.0;  // P(K > 0.2) = 1 to double precision
  // Alternating series 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2), fast for lambda >= 0.2.
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-17) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw Error(ErrorCode::InsufficientData, "empty sample");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  return kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InsufficientData, "empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

double ks_two_sample_pvalue(double d, std::size_t n, std::size_t m) {
  const double ne = static_cast<double>(n) * m / static_cast<double>(n + m);
  return ks_pvalue(d, static_cast<std::size_t>(std::max(1.0, std::round(ne))));
}

double jarque_bera_statistic(std::span<const double> x) {
  if (x.size() < 8) throw Error(ErrorCode::InsufficientData, "too few values for a normality test");
  const double m = mean(x);
  const double n = static_cast<double>(x.size());
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 <= 0.0) return std::numeric_limits<double>::infinity();
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2) - 3.0;
  return n / 6.0 * (skew * skew + kurt * kurt / 4.0);
}

double jarque_bera_p(std::span<const double> x) {
  const double jb = jarque_bera_statistic(x);
  return std::isinf(jb) ? 0.0 : chi2_sf(jb, 2.0);
}

double bartlett_p(const std::vector<std::vector<double>>& groups) {
  const double k = static_cast<double>(groups.size());
  if (groups.size() < 2) throw Error(ErrorCode::InsufficientData, "Bartlett test needs two groups");
  double total = 0.0, pooled = 0.0, log_sum = 0.0, inv_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw Error(ErrorCode::InsufficientData, "Bartlett group with fewer than two values");
    const double dof = static_cast<double>(g.size() - 1);
    const double v = variance(g);
    if (v <= 0.0) return 0.0;
    total += dof;
    pooled += dof * v;
    log_sum += dof * std::log(v);
    inv_sum += 1.0 / dof;
  }
  pooled /= total;
  const double stat = (total * std::log(pooled) - log_sum) / (1.0 + (inv_sum - 1.0 / total) / (3.0 * (k - 1.0)));
  return chi2_sf(stat, k - 1.0);
}

std::size_t false_positive_budget(std::size_t m, double alpha, double tail) {
  if (m == 0) return 0;
  const boost::math::binomial dist(static_cast<double>(m), alpha);
  for (std::size_t k = 0; k < m; ++k) {
    if (boost::math::cdf(boost::math::complement(dist, static_cast<double>(k))) <= tail) return k;
  }
  return m;
}

double binomial_se(double p, std::size_t n) {
  return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double slope(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace percolab::stats
