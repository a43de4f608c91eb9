#pragma once

// Cardy's crossing formula and the explicit conformal maps used to place
// four boundary points on a reference domain.

#include <complex>
#include <cstddef>

#include <json.hpp>

namespace percolab {

using Complex = std::complex<double>;

/// ((w1-w2)(w3-w4)) / ((w1-w3)(w2-w4)).  Any argument may be the point at
/// infinity (a component equal to +-inf); the factors containing it cancel.
/// Throws DegenerateDenominator when w1 == w3 or w2 == w4.
Complex cross_ratio_complex(Complex w1, Complex w2, Complex w3, Complex w4);

/// Real part of the cross-ratio.  For four counterclockwise points on a circle
/// or line it lies in [0, 1]; throws DegenerateDenominator when the imaginary
/// residue exceeds 1e-9.
double cross_ratio(Complex w1, Complex w2, Complex w3, Complex w4);

/// Gamma(2/3) / (Gamma(4/3) Gamma(1/3)).
double cardy_prefactor();

struct CardyValue {
  double probability = 0.0;
  std::size_t series_terms = 0;
  double error_bound = 0.0;
};

/// F(eta) = prefactor * eta^(1/3) * 2F1(1/3, 2/3; 4/3; eta).  The power series
/// is summed for eta <= 1/2; above, F(eta) = 1 - F(1 - eta) is used.  Throws
/// ConfigError for eta outside [0, 1] or tol <= 0, and ToleranceNotReached
/// when the tail bound cannot be pushed below `tol` (tol under the double
/// resolution of the result, or 10000 terms exhausted).
CardyValue cardy_F(double eta, double tol = 1e-14);

/// w = i (1 - z) / (1 + z): unit disc onto the upper half-plane, 1 -> 0,
/// -1 -> infinity.  Throws PoleAtMinusOne at z = -1.
Complex mobius_disc_to_half(Complex z);
/// Inverse map z = (i - w) / (i + w); the point at infinity goes to -1.
Complex mobius_half_to_disc(Complex w);

/// w = -(z + 1/z) / 2: upper unit semi-disc onto the upper half-plane with
/// 0 -> infinity, 1 -> -1, -1 -> 1, e^{i theta} -> -cos(theta).
Complex joukowski(Complex z);

enum class ReferenceDomain { Disc, HalfPlane };

/// Probability that a chordal exploration started at boundary point a first
/// hits the target arc (c, d) inside the sub-arc (c, x).  Points lie on the
/// boundary of the reference domain in counterclockwise order a, c, x, d;
/// infinity is allowed on the half-plane.  Equals F(eta) with
/// eta = cross_ratio(d, a, c, x): the hit lands in (c, x) exactly when the
/// left-hand color crosses from (d, a) to (c, x).  Throws OrderViolation.
double hitting_cdf(ReferenceDomain ref, Complex a, Complex c, Complex d, Complex x);

/// Hitting CDF on the semicircle |z| = r of the exploration started at 0 in
/// the upper half-plane: the probability that the exit angle is at most
/// theta, computed through the Joukowski map.
double semicircle_hitting_cdf(double theta);

nlohmann::json to_json(const CardyValue& v);

}  // namespace percolab
