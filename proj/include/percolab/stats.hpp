#pragma once

// Small statistical toolbox shared by the Loewner estimators and the
// experiment drivers.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace percolab::stats {

double mean(std::span<const double> x);
/// Unbiased sample variance; 0 for fewer than two values.
double variance(std::span<const double> x);

/// Two-sided p-value of a standard normal statistic.
double normal_two_sided_p(double z);
/// Upper tail of the chi-squared distribution with k degrees of freedom.
double chi2_sf(double x, double k);
/// Two-sided p-value of a variance ratio with (d1, d2) degrees of freedom.
double f_two_sided_p(double ratio, double d1, double d2);

/// Kolmogorov distribution upper tail P(K > lambda).
double kolmogorov_sf(double lambda);
/// sup |F_n - F| of the empirical distribution of `x` against `cdf`.
double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf);
/// Asymptotic p-value of a one-sample statistic with the usual small-n correction.
double ks_pvalue(double d, std::size_t n);
/// Two-sample statistic and its asymptotic p-value.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
double ks_two_sample_pvalue(double d, std::size_t n, std::size_t m);

/// Jarque-Bera statistic; +infinity for constant data.
double jarque_bera_statistic(std::span<const double> x);
/// Jarque-Bera normality test p-value (chi-squared with 2 degrees of freedom).
double jarque_bera_p(std::span<const double> x);
/// Bartlett's test for equal variances across groups.
double bartlett_p(const std::vector<std::vector<double>>& groups);

/// Smallest k with P(Binomial(m, alpha) > k) <= tail: the number of
/// rejections m independent level-alpha tests may produce under the null.
std::size_t false_positive_budget(std::size_t m, double alpha, double tail = 1e-3);

/// sqrt(p (1 - p) / n).
double binomial_se(double p, std::size_t n);

/// Least-squares slope of y on x.
double slope(std::span<const double> x, std::span<const double> y);

}  // namespace percolab::stats
