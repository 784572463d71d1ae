#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gfk/gauss.hpp"

// The halfspace eigenvalue curve Lambda(r) = first Dirichlet eigenvalue of
// the 1-D Ornstein-Uhlenbeck operator on (-inf, r), the Faber-Krahn profile
// g(m) = Lambda(phi_inv(m)), and the regularity checks on them.
//
// The solve works in the Schroedinger form: substituting
// v = (2 pi)^{-1/4} e^{-x^2/4} u turns -u'' + x u' = lambda u into
// -v'' + (x^2/4 - 1/2) v = lambda v with the same spectrum, so the matrix
// is symmetric tridiagonal and Sturm bisection applies. The interval is
// truncated to [r - tail, r]; the potential confines eigenfunctions, so the
// truncation error decays super-exponentially in tail.

namespace gfk {

/// First Dirichlet eigenvalue Lambda(r) on (-inf, r). Second-order accurate
/// in `step`; `step` must be <= 1e-2.
double lambda_halfline(double r, double step = 1e-3, double tail = 12.0);

/// Second Dirichlet eigenvalue on (-inf, r).
double lambda2_halfline(double r, double step = 1e-3, double tail = 12.0);

struct LineEigenfunction {
  double r = 0.0;
  double step = 0.0;
  double lambda = 0.0;
  Eigen::ArrayXd x;  // interior nodes of [r - tail, r], ascending
  Eigen::ArrayXd u;  // OU-form eigenfunction, u >= 0, int u^2 dgamma_1 = 1
};

/// First eigenfunction in the original (Ornstein-Uhlenbeck) variables.
LineEigenfunction halfline_first_eigenfunction(double r, double step = 1e-3, double tail = 12.0);

/// Faber-Krahn profile g(m) = lambda_halfline(phi_inv(m)), one direct solve.
double g_profile(double m, double step = 1e-3);

/// Invert g on a bracket by bisection to `tol` in m. Throws if lam is not
/// between g(m_hi) and g(m_lo).
double g_inverse(double lam, double m_lo, double m_hi, double tol = 1e-8, double step = 1e-3);

/// Cached profile: Lambda and lambda_2 sampled on a uniform r-grid with
/// monotone cubic interpolation in between. Immutable once built.
class ProfileTable {
 public:
  ProfileTable(double r_min, double r_max, double dr, double step = 1e-3);

  double lambda(double r) const;   // interpolated Lambda(r)
  double lambda2(double r) const;
  double g(double m) const { return lambda(phi_inv(m)); }

  double r_min() const { return r_[0]; }
  double r_max() const { return r_[r_.size() - 1]; }
  double solver_step() const { return step_; }
  const Eigen::ArrayXd& r_samples() const { return r_; }
  const Eigen::ArrayXd& lambda_samples() const { return l1_; }
  const Eigen::ArrayXd& lambda2_samples() const { return l2_; }

 private:
  double interp(const Eigen::ArrayXd& y, const Eigen::ArrayXd& slopes, double r) const;

  double step_;
  Eigen::ArrayXd r_, l1_, l2_, d1_, d2_;  // values and monotone slopes
};

/// Shared default table on r in [-4, 4]; built on first use.
const ProfileTable& default_profile_table();

struct ForwardDiffCheck {
  double ratio = 0.0;  // (Lambda(r-h) - Lambda(r)) / h
  double bound = 0.0;  // sqrt(Lambda(r)) + h/4
  double tol = 0.0;
  bool ok = false;
};

/// Checks 0 <= (Lambda(r-h) - Lambda(r))/h <= sqrt(Lambda(r)) + h/4 within
/// a tolerance of 10x the eigenvalue discretization error over h.
ForwardDiffCheck lipschitz_forward_check(double r, double h, double step = 1e-3);

struct ConvexityCheck {
  double min_second_diff = 0.0;  // min centered second difference / dr^2
  bool ok = false;
};

/// Second differences of Lambda on a uniform grid must be >= -tol.
ConvexityCheck convexity_check(const Eigen::ArrayXd& r_grid, double tol = 1e-4,
                               double step = 1e-3);

struct LipschitzEstimate {
  double L = 0.0;
  int samples = 0;
  double m_lo = 0.0, m_hi = 0.0;
};

/// Largest L with g(a) - g(b) >= L (b - a) over the sampled half-open
/// interval (m_lo, m_hi]; equals the minimum consecutive decrement slope.
LipschitzEstimate local_lipschitz_L(double m_lo, double m_hi, int samples,
                                    double step = 1e-3);

}  // namespace gfk
