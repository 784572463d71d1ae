#pragma once

#include <cmath>
#include <stdexcept>

// Scalar Gaussian primitives: the standard normal CDF, its inverse, the
// Gaussian isoperimetric function and 1-D density helpers. Everything
// downstream (grids, profiles, deficits) is built on these.

namespace gfk {

inline constexpr double sqrt2 = 1.4142135623730951;
inline constexpr double sqrt_2pi = 2.5066282746310002;

/// Standard normal density (2*pi)^{-1/2} exp(-x^2/2).
inline double gauss_density1(double x) {
  return std::exp(-0.5 * x * x) / sqrt_2pi;
}

/// N-dimensional standard Gaussian density at squared radius |x|^2.
inline double gauss_density(double r2, int dim) {
  return std::exp(-0.5 * r2) / std::pow(sqrt_2pi, dim);
}

/// Gaussian CDF Phi(r), the measure of the halfline (-inf, r).
/// Relative accuracy ~1e-15 on |r| <= 8 via the complementary error function.
inline double phi(double r) {
  if (!std::isfinite(r)) throw std::domain_error("phi: non-finite argument");
  return 0.5 * std::erfc(-r / sqrt2);
}

/// Upper tail 1 - Phi(r), computed without cancellation.
inline double phi_tail(double r) {
  if (!std::isfinite(r)) throw std::domain_error("phi_tail: non-finite argument");
  return 0.5 * std::erfc(r / sqrt2);
}

/// Inverse Gaussian CDF on (0,1). Safeguarded Newton on phi; the starting
/// point is a rational approximation good to ~1e-9, two Newton steps reach
/// machine precision.
double phi_inv(double m);

/// Gaussian isoperimetric function I(m) = exp(-phi_inv(m)^2/2), the
/// perimeter of any halfspace of measure m.
inline double iso_profile(double m) {
  if (!(m > 0.0 && m < 1.0)) throw std::domain_error("iso_profile: m outside (0,1)");
  const double r = phi_inv(m);
  return std::exp(-0.5 * r * r);
}

}  // namespace gfk
