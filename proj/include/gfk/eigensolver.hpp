#pragma once

#include <stdexcept>
#include <vector>

#include "gfk/grid.hpp"

// First Dirichlet eigenpair of the Ornstein-Uhlenbeck operator on a mask,
// via the Gaussian-weighted flux-form stencil. The stiffness quadratic form
// approximates int |grad u|^2 dgamma: every face between adjacent cells
// carries the exact Gaussian cross-section mass of the cell times the 1-D
// density at the interface over the gap length. Faces against outside
// cells are Dirichlet, with the gap estimated to sub-cell accuracy from the
// smoothed indicator; faces on the truncation box are natural (the box
// stands in for the whole space, so constants on the full box have zero
// energy).

namespace gfk {

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), last_residual(residual) {}
  double last_residual;
};

class GridOperators {
 public:
  explicit GridOperators(const DomainMask& mask);

  Eigen::Index dofs() const { return dof_count_; }
  bool has_dirichlet_boundary() const { return !boundary_.empty(); }

  Eigen::VectorXd apply_stiffness(const Eigen::VectorXd& u) const;
  Eigen::VectorXd apply_mass(const Eigen::VectorXd& u) const { return (mass_ * u.array()).matrix(); }
  const Eigen::ArrayXd& stiffness_diagonal() const { return k_diag_; }
  const Eigen::ArrayXd& mass_diagonal() const { return mass_; }

  double stiffness_quadratic(const Eigen::VectorXd& u) const;
  double mass_quadratic(const Eigen::VectorXd& u) const { return (mass_ * u.array().square()).sum(); }

  /// Scatter a dof vector to the full grid (zero outside the mask).
  Eigen::ArrayXd to_grid(const Eigen::VectorXd& u) const;
  /// Gather the inside-cell values of a grid array.
  Eigen::VectorXd from_grid(const Eigen::ArrayXd& grid_values) const;

  const DomainMask& mask() const { return mask_; }

 private:
  struct Face {
    Eigen::Index a, b;
    double coeff;
  };
  struct BoundaryTerm {
    Eigen::Index a;
    double coeff;
  };

  DomainMask mask_;
  std::vector<Eigen::Index> dof_of_cell_;  // -1 outside
  std::vector<Eigen::Index> cell_of_dof_;
  Eigen::Index dof_count_ = 0;
  std::vector<Face> faces_;
  std::vector<BoundaryTerm> boundary_;
  Eigen::ArrayXd mass_, k_diag_;
};

struct EigenResult {
  double lambda = 0.0;
  Eigen::ArrayXd u;  // full grid, zero outside the mask, u >= 0, int u^2 dgamma = 1
  double residual = 0.0;  // ||K u - lambda M u||_M
  int iterations = 0;
  bool connectivity_warning = false;
  int components = 1;
};

/// Smallest eigenpair of (K, M) by inverse iteration with Jacobi-CG inner
/// solves. Disconnected masks are allowed (global minimizer, warning set).
EigenResult first_eigenpair(const DomainMask& mask, double tol = 1e-8);

/// Rayleigh quotient of an admissible grid function (must vanish outside
/// the mask, must not be identically zero).
double rayleigh(const Eigen::ArrayXd& u, const DomainMask& mask);

/// Gaussian Dirichlet energy of a grid function over the whole box.
double dirichlet_energy(const GridPtr& grid, const Eigen::ArrayXd& u);

struct LevelProfile {
  Eigen::ArrayXd t;                            // thresholds, ascending from 0
  Eigen::ArrayXd mu;                           // gamma({u > t})
  Eigen::ArrayXd minus_mu_prime;               // difference-quotient estimate
  Eigen::Array<bool, Eigen::Dynamic, 1> floored;  // below the 1e-12 floor
};

/// Superlevel measure curve of an eigenfunction at n_levels uniform
/// thresholds in [0, max u). Where the centered difference of mu falls
/// below 1e-12 the level is marked floored; downstream integrands treat it
/// as zero, which only weakens the lower bounds built from it.
LevelProfile level_profile(const GridPtr& grid, const EigenResult& res, int n_levels);

}  // namespace gfk
