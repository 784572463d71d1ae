#include "gfk/gauss.hpp"

#include <algorithm>
#include <limits>

namespace gfk {

namespace {

// Acklam's rational approximation to the inverse normal CDF.
// Absolute error below 1.2e-9 over (0,1); used only as a Newton seed.
double phi_inv_seed(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double s = q * q;
  return (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * q /
         (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
}

}  // namespace

double phi_inv(double m) {
  if (!(m > 0.0 && m < 1.0)) throw std::domain_error("phi_inv: m outside (0,1)");

  double r = phi_inv_seed(m);
  // Safeguarding bracket around the seed; widened until it straddles m.
  double lo = r - 1e-6, hi = r + 1e-6;
  double w = 1e-6;
  while (phi(lo) > m) { w *= 8; lo = r - w; }
  w = 1e-6;
  while (phi(hi) < m) { w *= 8; hi = r + w; }

  for (int it = 0; it < 60; ++it) {
    const double f = phi(r) - m;
    if (f > 0.0) hi = r; else lo = r;
    const double dens = gauss_density1(r);
    double step = (dens > 0.0) ? f / dens : 0.0;
    double next = r - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
    if (std::abs(next - r) <= 1e-15 * std::max(1.0, std::abs(r))) { r = next; break; }
    r = next;
  }
  return r;
}

}  // namespace gfk
