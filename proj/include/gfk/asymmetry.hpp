#pragma once

#include "gfk/grid.hpp"

// Gaussian Fraenkel asymmetry: the minimal normalized symmetric difference
// between a set and the equal-measure halfspaces, minimized over the
// direction. Coarse direction scan first (the objective is non-convex),
// then local refinement; the refined minimum never exceeds the coarse one.

namespace gfk {

struct AsymmetryResult {
  double value = 0.0;          // A in [0, 2)
  Eigen::VectorXd omega;       // argmin direction
  double r = 0.0;              // phi_inv(gamma(mask))
  double coarse_value = 0.0;   // best of the coarse scan
  int refine_evals = 0;
  bool audited = false;
  double audit_value = 0.0;    // dense-scan value when audited (2-D: 3600 angles)
};

struct AsymmetryOptions {
  int coarse_2d = 360;
  int coarse_3d = 1024;
  double refine_tol = 1e-4;  // radians (2-D) / chart step (3-D)
  bool audit = false;
  int audit_2d = 3600;
};

/// Halfspace with direction omega and the threshold that gives measure m.
Halfspace halfspace_for(const Eigen::VectorXd& omega, double m);

AsymmetryResult fraenkel_asymmetry(const DomainMask& mask, const AsymmetryOptions& opt = {});

struct TransferLemmaCheck {
  double lhs = 0.0;         // gamma(F sym E) / gamma(F)
  double rhs = 0.0;         // kappa * A(F)
  double asym_E = 0.0;
  double asym_F = 0.0;
  double c_kappa = 1.0;
  bool applicable = false;  // lhs <= rhs
  bool ok = false;          // A(E) >= (1-2 kappa)/c_kappa * A(F) - tol
};

/// If E differs from F by at most kappa * A(F) in relative measure, the
/// asymmetry of E is controlled from below by the asymmetry of F.
TransferLemmaCheck transfer_lemma_check(const DomainMask& E, const DomainMask& F, double kappa,
                                        double tol = 1e-3);

}  // namespace gfk
