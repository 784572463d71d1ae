#pragma once

#include "gfk/grid.hpp"

// Ehrhard symmetrization on the grid: per line in the chosen direction, a
// set section becomes the left halfline of equal gamma_1-mass and a
// function trace becomes its nonincreasing equimeasurable rearrangement.
// Axis directions are exact at grid resolution; general 2-D directions go
// through bilinear rotation-resampling, whose extra error is the caller's
// to budget.

namespace gfk {

/// Per-line halfline replacement along the given axis. Exactly idempotent;
/// per-line mass preserved within one axis cell weight.
DomainMask symmetrize_set(const DomainMask& mask, int axis);

/// Nonincreasing equimeasurable rearrangement of every line trace. Equal
/// values keep their original coordinate order (stable).
Eigen::ArrayXd symmetrize_function(const GridPtr& grid, const Eigen::ArrayXd& u, int axis);

/// General 2-D direction via rotate-resample-symmetrize-rotate back.
Eigen::ArrayXd symmetrize_function_dir(const GridPtr& grid, const Eigen::ArrayXd& u,
                                       const Eigen::Vector2d& h_dir);
DomainMask symmetrize_set_dir(const DomainMask& mask, const Eigen::Vector2d& h_dir);

struct PolyaSzegoCheck {
  double energy_before = 0.0;
  double energy_after = 0.0;
  double tol = 0.0;
  bool ok = false;
};

/// Energy must not increase under symmetrization, up to a discretization
/// allowance of h * energy_before.
PolyaSzegoCheck polya_szego_check(const GridPtr& grid, const Eigen::ArrayXd& u, int axis);

}  // namespace gfk
