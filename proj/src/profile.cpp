#include "gfk/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "gfk/tridiag.hpp"

namespace gfk {

namespace {

// Schroedinger potential of the OU substitution.
inline double schrodinger_potential(double x) { return 0.25 * x * x - 0.5; }

Eigen::ArrayXd schrodinger_diag(double r, double step, double tail, double* out_left = nullptr) {
  const Eigen::Index m = static_cast<Eigen::Index>(std::llround(tail / step));
  if (m < 8) throw std::invalid_argument("halfline solve: tail/step too small");
  const double left = r - step * double(m);
  if (out_left) *out_left = left;
  Eigen::ArrayXd diag(m - 1);
  const double inv2 = 2.0 / (step * step);
  for (Eigen::Index i = 0; i < m - 1; ++i) {
    const double x = left + step * double(i + 1);
    diag[i] = inv2 + schrodinger_potential(x);
  }
  return diag;
}

double halfline_eigenvalue(double r, double step, double tail, int k) {
  if (!std::isfinite(r)) throw std::domain_error("halfline solve: non-finite r");
  if (!(step > 0.0 && step <= 1e-2)) throw std::invalid_argument("halfline solve: step must be in (0, 1e-2]");
  if (tail < 12.0) throw std::invalid_argument("halfline solve: tail must be >= 12");
  const Eigen::ArrayXd diag = schrodinger_diag(r, step, tail);
  return tridiag_eigenvalue(diag, -1.0 / (step * step), k);
}

}  // namespace

double lambda_halfline(double r, double step, double tail) {
  return halfline_eigenvalue(r, step, tail, 1);
}

double lambda2_halfline(double r, double step, double tail) {
  return halfline_eigenvalue(r, step, tail, 2);
}

LineEigenfunction halfline_first_eigenfunction(double r, double step, double tail) {
  double left = 0.0;
  const Eigen::ArrayXd diag = schrodinger_diag(r, step, tail, &left);
  const double off = -1.0 / (step * step);
  const double lambda = tridiag_eigenvalue(diag, off, 1);
  Eigen::ArrayXd v = tridiag_eigenvector(diag, off, lambda);
  if (v.sum() < 0.0) v = -v;

  LineEigenfunction fn;
  fn.r = r;
  fn.step = step;
  fn.lambda = lambda;
  fn.x.resize(v.size());
  fn.u.resize(v.size());
  // ||v||^2 * step = int u^2 dgamma_1 under the substitution, so rescale the
  // unit-norm v by step^{-1/2} and map back to OU variables.
  const double scale = 1.0 / std::sqrt(step);
  const double pow_2pi_quarter = std::pow(2.0 * M_PI, 0.25);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = left + step * double(i + 1);
    fn.x[i] = x;
    fn.u[i] = std::max(0.0, scale * v[i] * pow_2pi_quarter * std::exp(0.25 * x * x));
  }
  return fn;
}

double g_profile(double m, double step) {
  if (!(m > 0.0 && m < 1.0)) throw std::domain_error("g_profile: m outside (0,1)");
  return lambda_halfline(phi_inv(m), step);
}

double g_inverse(double lam, double m_lo, double m_hi, double tol, double step) {
  if (!(m_lo > 0.0 && m_lo < m_hi && m_hi < 1.0))
    throw std::invalid_argument("g_inverse: bad bracket");
  double g_lo = g_profile(m_lo, step);  // larger value (g decreasing)
  double g_hi = g_profile(m_hi, step);
  if (!(lam <= g_lo && lam >= g_hi))
    throw std::invalid_argument("g_inverse: lam outside bracket range");
  double lo = m_lo, hi = m_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (g_profile(mid, step) >= lam) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

ProfileTable::ProfileTable(double r_min, double r_max, double dr, double step) : step_(step) {
  if (!(r_min < r_max) || !(dr > 0.0)) throw std::invalid_argument("ProfileTable: bad range");
  const int count = static_cast<int>(std::llround((r_max - r_min) / dr)) + 1;
  if (count < 4) throw std::invalid_argument("ProfileTable: need at least 4 samples");
  r_.resize(count);
  l1_.resize(count);
  l2_.resize(count);
  for (int i = 0; i < count; ++i) {
    r_[i] = r_min + dr * i;
    l1_[i] = lambda_halfline(r_[i], step);
    l2_[i] = lambda2_halfline(r_[i], step);
  }
  for (int i = 0; i + 1 < count; ++i) {
    if (!(l1_[i + 1] < l1_[i]) || !(l1_[i] > 0.0))
      throw std::runtime_error("ProfileTable: lambda samples not strictly decreasing/positive");
  }

  // Fritsch-Carlson monotone cubic slopes.
  auto pchip = [](const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) {
    const Eigen::Index n = x.size();
    Eigen::ArrayXd d(n), delta(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d[i] = 0.0;
      } else {
        // harmonic mean keeps the interpolant monotone
        d[i] = 2.0 / (1.0 / delta[i - 1] + 1.0 / delta[i]);
      }
    }
    return d;
  };
  d1_ = pchip(r_, l1_);
  d2_ = pchip(r_, l2_);
}

double ProfileTable::interp(const Eigen::ArrayXd& y, const Eigen::ArrayXd& slopes, double r) const {
  if (r < r_[0] || r > r_[r_.size() - 1])
    throw std::domain_error("ProfileTable: r outside table range");
  Eigen::Index lo = 0, hi = r_.size() - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    if (r_[mid] <= r) lo = mid; else hi = mid;
  }
  const double hseg = r_[lo + 1] - r_[lo];
  const double t = (r - r_[lo]) / hseg;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  const double h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t);
  const double h11 = t * t * (t - 1);
  return h00 * y[lo] + h10 * hseg * slopes[lo] + h01 * y[lo + 1] + h11 * hseg * slopes[lo + 1];
}

double ProfileTable::lambda(double r) const { return interp(l1_, d1_, r); }
double ProfileTable::lambda2(double r) const { return interp(l2_, d2_, r); }

const ProfileTable& default_profile_table() {
  static const ProfileTable table(-4.0, 4.0, 0.02, 1e-3);
  return table;
}

ForwardDiffCheck lipschitz_forward_check(double r, double h, double step) {
  if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("lipschitz_forward_check: h outside (0,1]");
  const double lam_r = lambda_halfline(r, step);
  const double lam_rh = lambda_halfline(r - h, step);
  ForwardDiffCheck out;
  out.ratio = (lam_rh - lam_r) / h;
  out.bound = std::sqrt(lam_r) + 0.25 * h;
  const double lam_max = std::max(lam_r, lam_rh);
  const double eig_tol = step * step * std::max(1.0, lam_max * lam_max);
  out.tol = 10.0 * eig_tol / h;
  out.ok = out.ratio >= -out.tol && out.ratio <= out.bound + out.tol;
  return out;
}

ConvexityCheck convexity_check(const Eigen::ArrayXd& r_grid, double tol, double step) {
  const Eigen::Index n = r_grid.size();
  if (n < 3) throw std::invalid_argument("convexity_check: need at least 3 points");
  const double dr = r_grid[1] - r_grid[0];
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    if (std::abs((r_grid[i + 1] - r_grid[i]) - dr) > 1e-12 * std::max(1.0, std::abs(dr)))
      throw std::invalid_argument("convexity_check: grid not uniform");

  Eigen::ArrayXd lam(n);
  for (Eigen::Index i = 0; i < n; ++i) lam[i] = lambda_halfline(r_grid[i], step);

  ConvexityCheck out;
  out.min_second_diff = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double s = (lam[i - 1] - 2.0 * lam[i] + lam[i + 1]) / (dr * dr);
    out.min_second_diff = std::min(out.min_second_diff, s);
  }
  out.ok = out.min_second_diff >= -tol;
  return out;
}

LipschitzEstimate local_lipschitz_L(double m_lo, double m_hi, int samples, double step) {
  if (!(m_lo > 0.0 && m_lo < m_hi && m_hi < 1.0))
    throw std::invalid_argument("local_lipschitz_L: bad interval");
  if (samples < 2) throw std::invalid_argument("local_lipschitz_L: need >= 2 samples");
  // Half-open sampling of (m_lo, m_hi]: m_lo itself is excluded.
  LipschitzEstimate est;
  est.samples = samples;
  est.m_lo = m_lo;
  est.m_hi = m_hi;
  est.L = std::numeric_limits<double>::infinity();
  const double dm = (m_hi - m_lo) / samples;
  double prev_g = g_profile(m_lo + dm, step);
  for (int j = 2; j <= samples; ++j) {
    const double m = m_lo + dm * j;
    const double cur_g = g_profile(m, step);
    est.L = std::min(est.L, (prev_g - cur_g) / dm);
    prev_g = cur_g;
  }
  return est;
}

}  // namespace gfk
