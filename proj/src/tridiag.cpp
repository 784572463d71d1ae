#include "gfk/tridiag.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gfk {

int sturm_count_below(const Eigen::ArrayXd& diag, double offdiag, double sigma) {
  const double b2 = offdiag * offdiag;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = 1.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    q = (diag[i] - sigma) - (i > 0 ? b2 / q : 0.0);
    if (q < 0.0) ++count;
    if (std::abs(q) < tiny) q = (q < 0.0 ? -tiny : tiny);
  }
  return count;
}

double tridiag_eigenvalue(const Eigen::ArrayXd& diag, double offdiag, int k) {
  if (k < 1 || k > diag.size()) throw std::invalid_argument("tridiag_eigenvalue: bad k");
  // Gershgorin-safe lower bound; upper bound grown until it covers k modes.
  double lo = diag.minCoeff() - 2.0 * std::abs(offdiag);
  double hi = 4.0;
  while (sturm_count_below(diag, offdiag, hi) < k) hi = hi * 2.0 + 1.0;

  while (hi - lo > 1e-13 * std::max(1.0, std::abs(hi)) + 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count_below(diag, offdiag, mid) >= k) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::ArrayXd tridiag_eigenvector(const Eigen::ArrayXd& diag, double offdiag, double lambda) {
  const Eigen::Index n = diag.size();
  const double shift = lambda - 1e-10 * std::max(1.0, std::abs(lambda));
  Eigen::ArrayXd v = Eigen::ArrayXd::Ones(n);
  Eigen::ArrayXd c(n), d(n);
  for (int sweep = 0; sweep < 3; ++sweep) {
    // Thomas solve (T - shift) w = v
    d[0] = diag[0] - shift;
    c[0] = offdiag / d[0];
    for (Eigen::Index i = 1; i < n; ++i) {
      d[i] = (diag[i] - shift) - offdiag * c[i - 1];
      if (d[i] == 0.0) d[i] = 1e-300;
      c[i] = offdiag / d[i];
    }
    Eigen::ArrayXd w(n);
    w[0] = v[0] / d[0];
    for (Eigen::Index i = 1; i < n; ++i) w[i] = (v[i] - offdiag * w[i - 1]) / d[i];
    for (Eigen::Index i = n - 2; i >= 0; --i) w[i] -= c[i] * w[i + 1];
    const double norm = std::sqrt((w * w).sum());
    v = w / norm;
  }
  return v;
}

}  // namespace gfk
