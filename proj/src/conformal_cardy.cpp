#include "percolab/conformal_cardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "percolab/error.hpp"

namespace percolab {

namespace {

bool infinite(Complex w) { return std::isinf(w.real()) || std::isinf(w.imag()); }

// Position along the reference boundary, as an angle on the unit circle.
double boundary_angle(ReferenceDomain ref, Complex w) {
  const Complex z = ref == ReferenceDomain::Disc ? w : mobius_half_to_disc(w);
  const double t = std::arg(z);
  return t < 0 ? t + 2 * std::numbers::pi : t;
}

}  // namespace

Complex cross_ratio_complex(Complex w1, Complex w2, Complex w3, Complex w4) {
  const Complex w[4] = {w1, w2, w3, w4};
  int inf_at = -1;
  for (int i = 0; i < 4; ++i) {
    if (infinite(w[i])) {
      if (inf_at >= 0) throw Error(ErrorCode::DegenerateDenominator, "two points at infinity");
      inf_at = i;
    }
  }
  // Factor (w_i - w_j), replaced by 1 when it contains the point at infinity.
  auto f = [&](int i, int j) { return i == inf_at || j == inf_at ? Complex(1.0) : w[i] - w[j]; };
  const Complex num = f(0, 1) * f(2, 3);
  Complex den = f(0, 2) * f(1, 3);
  // (w1 - w2)/(w2 - w4) and (w3 - w4)/(w1 - w3) tend to -1.
  if (inf_at == 1 || inf_at == 2) den = -den;
  if (std::abs(den) == 0.0) throw Error(ErrorCode::DegenerateDenominator, "w1 == w3 or w2 == w4");
  return num / den;
}

double cross_ratio(Complex w1, Complex w2, Complex w3, Complex w4) {
  const Complex eta = cross_ratio_complex(w1, w2, w3, w4);
  if (std::abs(eta.imag()) > 1e-9) {
    throw Error(ErrorCode::DegenerateDenominator, "points are not on a common circle or line");
  }
  return eta.real();
}

double cardy_prefactor() {
  static const double value = std::tgamma(2.0 / 3) / (std::tgamma(4.0 / 3) * std::tgamma(1.0 / 3));
  return value;
}

CardyValue cardy_F(double eta, double tol) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::ConfigError, "eta outside [0, 1]");
  if (!(tol > 0.0)) throw Error(ErrorCode::ConfigError, "tolerance must be positive");
  if (eta == 0.0) return {0.0, 0, 0.0};
  if (eta == 1.0) return {1.0, 0, 0.0};
  if (eta > 0.5) {
    CardyValue v = cardy_F(1.0 - eta, tol);
    v.probability = 1.0 - v.probability;
    return v;
  }
  constexpr std::size_t kMaxTerms = 10000;
  const double scale = cardy_prefactor() * std::cbrt(eta);
  // Below the rounding resolution of the sum no number of terms helps.
  if (tol < std::numeric_limits<double>::epsilon() * scale) {
    throw Error(ErrorCode::ToleranceNotReached, "tolerance below double resolution");
  }
  double term = 1.0, sum = 1.0;
  for (std::size_t n = 0; n < kMaxTerms; ++n) {
    const double a = n + 1.0 / 3, b = n + 2.0 / 3, c = n + 4.0 / 3;
    term *= a * b / (c * (n + 1.0)) * eta;
    sum += term;
    // The term ratio increases towards eta, so the remaining terms are
    // bounded by a geometric series of ratio eta.
    const double bound = scale * term * eta / (1.0 - eta);
    if (bound <= tol) return {scale * sum, n + 2, bound};
  }
  throw Error(ErrorCode::ToleranceNotReached, "hypergeometric series did not reach the tolerance");
}

Complex mobius_disc_to_half(Complex z) {
  if (std::abs(1.0 + z) == 0.0) throw Error(ErrorCode::PoleAtMinusOne, "z = -1 maps to infinity");
  return Complex(0, 1) * (1.0 - z) / (1.0 + z);
}

Complex mobius_half_to_disc(Complex w) {
  if (infinite(w)) return -1.0;
  return (Complex(0, 1) - w) / (Complex(0, 1) + w);
}

Complex joukowski(Complex z) { return -0.5 * (z + 1.0 / z); }

double hitting_cdf(ReferenceDomain ref, Complex a, Complex c, Complex d, Complex x) {
  constexpr double kTwoPi = 2 * std::numbers::pi;
  constexpr double kSlack = 1e-12;
  auto offset = [&](Complex w) {
    return std::fmod(boundary_angle(ref, w) - boundary_angle(ref, a) + kTwoPi, kTwoPi);
  };
  const double tc = offset(c), tx = offset(x), td = offset(d);
  if (!(tc > kSlack && td > tc + kSlack && tx >= tc - kSlack && tx <= td + kSlack)) {
    throw Error(ErrorCode::OrderViolation, "points must be in counterclockwise order a, c, x, d");
  }
  if (tx <= tc + kSlack) return 0.0;
  if (tx >= td - kSlack) return 1.0;
  const double eta = cross_ratio(d, a, c, x);
  return cardy_F(std::clamp(eta, 0.0, 1.0)).probability;
}

double semicircle_hitting_cdf(double theta) {
  if (theta <= 0.0) return 0.0;
  if (theta >= std::numbers::pi) return 1.0;
  const Complex inf(std::numeric_limits<double>::infinity(), 0.0);
  return hitting_cdf(ReferenceDomain::HalfPlane, inf, joukowski(1.0), joukowski(-1.0),
                     joukowski(std::polar(1.0, theta)));
}

nlohmann::json to_json(const CardyValue& v) {
  return {{"probability", v.probability}, {"series_terms", v.series_terms}, {"error_bound", v.error_bound}};
}

}  // namespace percolab
