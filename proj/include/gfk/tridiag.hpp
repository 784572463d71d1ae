#pragma once

#include <Eigen/Dense>

// Symmetric tridiagonal eigenvalue tools with constant off-diagonal:
// Sturm-count bisection for the k-th smallest eigenvalue and inverse
// iteration for its eigenvector. Deterministic, no iterative tuning.

namespace gfk {

/// Number of eigenvalues of tridiag(diag, offdiag) strictly below sigma.
int sturm_count_below(const Eigen::ArrayXd& diag, double offdiag, double sigma);

/// k-th smallest eigenvalue (k is 1-based) to relative accuracy ~1e-12,
/// by bisection on the Sturm count.
double tridiag_eigenvalue(const Eigen::ArrayXd& diag, double offdiag, int k);

/// Eigenvector for a converged eigenvalue, unit Euclidean norm, via a few
/// shifted inverse-iteration sweeps (Thomas solves).
Eigen::ArrayXd tridiag_eigenvector(const Eigen::ArrayXd& diag, double offdiag, double lambda);

}  // namespace gfk
