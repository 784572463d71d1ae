#pragma once

#include <string>
#include <vector>

#include "gfk/asymmetry.hpp"
#include "gfk/eigensolver.hpp"
#include "gfk/profile.hpp"

// Experiment harness: per-mask deficit records D = lambda - g(m), the
// level-set lower-bound integral, the theorem-constant calculator, the
// domain families the experiments run over, and CSV/SVG emission.

namespace gfk {

/// f(m) = e^{phi_inv(m)^2/2} / (1 + phi_inv(m)^2).
double f_weight(double m);

struct DeficitRecord {
  std::string family;
  double param = 0.0;
  double m = 0.0;
  double lambda = 0.0;
  double g = 0.0;
  double deficit = 0.0;             // lambda - g(m)
  double asym = 0.0;                // Fraenkel asymmetry
  double d_a3 = 0.0, d_a2 = 0.0;    // NaN when asym <= ratio threshold
  double prop31 = 0.0;              // level-set bound without its 1/(2c)
  double implied_c = 0.0;           // prop31 / (2 D); NaN at noise level
  std::string warnings;             // ';'-separated tokens, CSV-safe
  // bookkeeping outside the CSV schema
  double eps_disc = 0.0;
  bool is_halfspace = false;
  bool failed = false;
};

struct Prop31Result {
  double bound = 0.0;
  int levels_used = 0;
  int levels_skipped = 0;
};

/// Midpoint sum of f(mu) A(level set)^2 I(mu) / (-mu') over the level
/// profile; floored levels are skipped (safe for a lower bound).
Prop31Result prop31_bound(const GridPtr& grid, const EigenResult& res, int n_levels = 32,
                          const AsymmetryOptions& asym_opt = {});

struct MainConstant {
  double m = 0.0, r = 0.0;
  double lipschitz_L = 0.0;      // of g on (m/2, m]
  double beta = 0.0;             // L m / (4 g(m))
  double c_beta = 0.0;           // (beta/(beta+1))^2
  double conclusion_constant = 0.0;  // m C_beta / (32 c (1+r^2))
  double small_deficit_branch = 0.0; // beta/(8(1+beta)) g(m)
  double c_m = 0.0;              // min of the two branches
  double c_assumed = 0.0;
};

/// The final constant of the main bound at given m and assumed absolute
/// constant c: m (beta/(beta+1))^2 / (32 c (1+r^2)).
double conclusion_constant(double m, double r, double beta, double c);

MainConstant main_constant(double m, double c_assumed, int n_samples = 64,
                           const ProfileTable* table = nullptr);

struct FamilyMember {
  double param = 0.0;
  DomainMask mask;
  bool is_halfspace = false;
};

/// Families: wedge (sector opening), tilted-cap (halfspace tilt angle),
/// bump (boundary bulge height), notch (notch half-width), two-slabs
/// (detached slab width), shifted-ball-complement (removed ball radius).
/// Each parameter path ends at (or converges to) a halfspace.
std::vector<FamilyMember> domain_family(const std::string& name,
                                        const std::vector<double>& params, const GridPtr& grid);
std::vector<double> default_family_params(const std::string& name);
const std::vector<std::string>& family_names();

struct DeficitOptions {
  double eig_tol = 1e-8;
  int n_levels = 32;
  double ratio_threshold = 1e-3;  // below this asymmetry the ratios are null
  AsymmetryOptions asym;
};

/// One record from a mask: eigenvalue, profile value, deficit, asymmetry,
/// level-set bound, implied constant. eps_disc defaults to 1e-3 * lambda;
/// sweeps with audit replace it by the Richardson gap.
DeficitRecord deficit(const DomainMask& mask, const ProfileTable& table,
                      const DeficitOptions& opt = {});

struct SweepOptions {
  int grid_n = 256;
  double box = 6.0;
  bool audit = false;  // rerun each member at n/2; eps_disc = max(tol, gap)
  unsigned seed = 0;   // recorded in headers; the families are deterministic
  DeficitOptions record;
};

/// One record per family member; failures are recorded in the warnings
/// column and the sweep continues. Rows are ordered along the parameter
/// path direction.
std::vector<DeficitRecord> sweep(const std::string& family, const std::vector<double>& params,
                                 const SweepOptions& opt, const ProfileTable& table);

/// Header row is exactly
/// family,param,m,lambda,g,D,A,D_A3,D_A2,prop31,implied_c,warnings
/// with floats in shortest round-trip decimal and nulls as empty fields.
/// config_echo lines are prepended as '#' comments.
std::string deficit_csv(const std::vector<DeficitRecord>& records,
                        const std::vector<std::string>& config_echo = {});
void write_deficit_csv(const std::vector<DeficitRecord>& records, const std::string& path,
                       const std::vector<std::string>& config_echo = {});

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;  // of log D vs log A
  double r2 = 0.0;
  int n_used = 0;
};

/// Least squares of log D against log A over usable records (A above the
/// ratio threshold, D above eps_disc). Throws if fewer than 4 qualify.
ExponentFit exponent_fit(const std::vector<DeficitRecord>& records);

/// Log-log scatter of (A, D) with the fitted line and the guarantee curve
/// D = C A^3. Self-contained SVG.
void write_sweep_svg(const std::vector<DeficitRecord>& records, const ExponentFit& fit,
                     double guarantee_constant, const std::string& path);

}  // namespace gfk
