#pragma once

#include <Eigen/Dense>

// Independent oracles used only by tests. They deliberately avoid the
// library's solution paths: the CDF oracle integrates the density with
// high-order quadrature instead of erfc, and the halfline eigenvalue oracle
// shoots the ODE with Numerov + node-count bisection instead of assembling
// a matrix.

namespace gfk::oracle {

/// Gaussian CDF by composite 16-point Gauss-Legendre quadrature of the
/// density over [-13, r]; accuracy far below 1e-13 on |r| <= 8.
double phi_quadrature(double r);

/// k-th Dirichlet eigenvalue (k 1-based) of the 1-D Ornstein-Uhlenbeck
/// operator on (-inf, r), via Numerov integration of the Schroedinger form
/// from r leftward and bisection on the interior node count.
double shooting_lambda(double r, int k, double step = 1e-5, double tail = 12.0);

/// First Dirichlet eigenvalue of the OU operator on a bounded interval
/// (a, b), by Sturm bisection of the Schroedinger-form tridiagonal matrix
/// at the given step (independent of the N-D grid solver path).
double interval_lambda(double a, double b, double step = 1e-4);

}  // namespace gfk::oracle
