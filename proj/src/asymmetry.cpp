#include "gfk/asymmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gfk {

namespace {

// Normalized symmetric difference against the halfspace {x . omega < r},
// evaluated without materializing the halfspace mask (this sits inside the
// direction scans).
double objective(const DomainMask& mask, double m, double r, const Eigen::VectorXd& omega) {
  const auto& g = *mask.grid;
  const int n = g.n();
  double acc = 0.0;
  if (g.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      const bool member = g.axis_center(i) * omega[0] < r;
      if (mask.cell(i) != member) acc += g.axis_weight(i);
    }
  } else if (g.dim() == 2) {
    const Eigen::Index sx = g.stride(0);
    for (int i = 0; i < n; ++i) {
      const double xi = g.axis_center(i) * omega[0];
      const double wi = g.axis_weight(i);
      const Eigen::Index row = i * sx;
      for (int j = 0; j < n; ++j) {
        const bool member = xi + g.axis_center(j) * omega[1] < r;
        if ((mask.inside[row + j] != 0) != member) acc += wi * g.axis_weight(j);
      }
    }
  } else {
    const Eigen::Index sx = g.stride(0), sy = g.stride(1);
    for (int i = 0; i < n; ++i) {
      const double xi = g.axis_center(i) * omega[0];
      const double wi = g.axis_weight(i);
      for (int j = 0; j < n; ++j) {
        const double xj = xi + g.axis_center(j) * omega[1];
        const double wj = wi * g.axis_weight(j);
        const Eigen::Index row = i * sx + j * sy;
        for (int k = 0; k < n; ++k) {
          const bool member = xj + g.axis_center(k) * omega[2] < r;
          if ((mask.inside[row + k] != 0) != member) acc += wj * g.axis_weight(k);
        }
      }
    }
  }
  return acc / m;
}

// Golden-section refinement over the angle, keeping the best sample seen
// (the objective is a staircase at grid resolution).
void refine_2d(const DomainMask& mask, double m, double r, double lo, double hi,
               double tol, double& best_val, double& best_theta, int& evals) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = objective(mask, m, r, direction2d(x1));
  double f2 = objective(mask, m, r, direction2d(x2));
  evals += 2;
  auto consider = [&](double th, double val) {
    if (val < best_val) { best_val = val; best_theta = th; }
  };
  consider(x1, f1);
  consider(x2, f2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(mask, m, r, direction2d(x1));
      ++evals;
      consider(x1, f1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(mask, m, r, direction2d(x2));
      ++evals;
      consider(x2, f2);
    }
  }
}

Eigen::Vector3d sphere_point(int k, int count) {
  // Fibonacci lattice
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double z = 1.0 - (2.0 * k + 1.0) / count;
  const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi_ang = 2.0 * M_PI * (k / golden - std::floor(k / golden));
  return {rad * std::cos(phi_ang), rad * std::sin(phi_ang), z};
}

// Downhill simplex on a tangent chart around the coarse best direction.
void refine_3d(const DomainMask& mask, double m, double r, const Eigen::Vector3d& center,
               double tol, double& best_val, Eigen::Vector3d& best_omega, int& evals) {
  // chart basis
  Eigen::Vector3d up = std::abs(center.z()) < 0.9 ? Eigen::Vector3d(0, 0, 1)
                                                  : Eigen::Vector3d(1, 0, 0);
  const Eigen::Vector3d e1 = center.cross(up).normalized();
  const Eigen::Vector3d e2 = center.cross(e1).normalized();
  auto dir_at = [&](const Eigen::Vector2d& p) -> Eigen::Vector3d {
    return (center + p.x() * e1 + p.y() * e2).normalized();
  };
  auto eval = [&](const Eigen::Vector2d& p) {
    const Eigen::Vector3d w = dir_at(p);
    const double v = objective(mask, m, r, w);
    ++evals;
    if (v < best_val) { best_val = v; best_omega = w; }
    return v;
  };

  Eigen::Vector2d pts[3] = {{0.0, 0.0}, {0.08, 0.0}, {0.0, 0.08}};
  double vals[3] = {eval(pts[0]), eval(pts[1]), eval(pts[2])};
  for (int iter = 0; iter < 200; ++iter) {
    int hi = 0, lo = 0;
    for (int i = 1; i < 3; ++i) {
      if (vals[i] > vals[hi]) hi = i;
      if (vals[i] < vals[lo]) lo = i;
    }
    const double size = std::max((pts[0] - pts[1]).norm(),
                                 std::max((pts[1] - pts[2]).norm(), (pts[0] - pts[2]).norm()));
    if (size < tol) break;
    const Eigen::Vector2d centroid = 0.5 * (pts[(hi + 1) % 3] + pts[(hi + 2) % 3]);
    const Eigen::Vector2d reflect = centroid + (centroid - pts[hi]);
    const double fr = eval(reflect);
    if (fr < vals[lo]) {
      const Eigen::Vector2d expand = centroid + 2.0 * (centroid - pts[hi]);
      const double fe = eval(expand);
      if (fe < fr) { pts[hi] = expand; vals[hi] = fe; }
      else { pts[hi] = reflect; vals[hi] = fr; }
    } else if (fr < vals[hi]) {
      pts[hi] = reflect;
      vals[hi] = fr;
    } else {
      const Eigen::Vector2d contract = centroid + 0.5 * (pts[hi] - centroid);
      const double fc = eval(contract);
      if (fc < vals[hi]) { pts[hi] = contract; vals[hi] = fc; }
      else {
        for (int i = 0; i < 3; ++i) {
          if (i == lo) continue;
          pts[i] = pts[lo] + 0.5 * (pts[i] - pts[lo]);
          vals[i] = eval(pts[i]);
        }
      }
    }
  }
}

}  // namespace

Halfspace halfspace_for(const Eigen::VectorXd& omega, double m) {
  return Halfspace(omega, phi_inv(m));
}

AsymmetryResult fraenkel_asymmetry(const DomainMask& mask, const AsymmetryOptions& opt) {
  const auto& g = *mask.grid;
  const double m = gauss_measure(mask);
  if (!(m > 0.0) || m >= g.box_mass() - 1e-12)
    throw std::invalid_argument("fraenkel_asymmetry: degenerate mask measure");

  AsymmetryResult res;
  res.r = phi_inv(m);

  if (g.dim() == 1) {
    // only two directions exist on the line
    const Eigen::VectorXd plus = Eigen::VectorXd::Ones(1);
    const double v_plus = objective(mask, m, res.r, plus);
    const double v_minus = objective(mask, m, res.r, -plus);
    res.value = std::min(v_plus, v_minus);
    res.coarse_value = res.value;
    res.omega = v_plus <= v_minus ? plus : -plus;
    if (opt.audit) { res.audited = true; res.audit_value = res.value; }
    return res;
  }

  if (g.dim() == 2) {
    // coarse scan, then local refinement of the best few bins: the
    // objective is a staircase at grid resolution, so a single-bin line
    // search can sit in a micro-dip a neighboring bin beats
    std::vector<double> coarse(opt.coarse_2d);
    for (int k = 0; k < opt.coarse_2d; ++k)
      coarse[k] = objective(mask, m, res.r, direction2d(2.0 * M_PI * k / opt.coarse_2d));

    std::vector<int> bins(opt.coarse_2d);
    std::iota(bins.begin(), bins.end(), 0);
    std::stable_sort(bins.begin(), bins.end(), [&](int a, int b) {
      return coarse[a] < coarse[b];  // ties keep the smaller index
    });
    res.coarse_value = coarse[bins[0]];

    const double span = 2.0 * M_PI / opt.coarse_2d;
    double best = res.coarse_value;
    double best_theta = 2.0 * M_PI * bins[0] / opt.coarse_2d;
    const int tops = std::min<int>(3, opt.coarse_2d);
    for (int t = 0; t < tops; ++t) {
      const double center = 2.0 * M_PI * bins[t] / opt.coarse_2d;
      // pitch scan across the bin, then golden section around the winner
      const int samples = 40;
      double local_best = coarse[bins[t]], local_theta = center;
      for (int sgn = -samples; sgn <= samples; ++sgn) {
        const double theta = center + span * sgn / samples;
        const double v = objective(mask, m, res.r, direction2d(theta));
        ++res.refine_evals;
        if (v < local_best) { local_best = v; local_theta = theta; }
      }
      if (local_best < best) { best = local_best; best_theta = local_theta; }
      refine_2d(mask, m, res.r, local_theta - span / samples, local_theta + span / samples,
                opt.refine_tol, best, best_theta, res.refine_evals);
    }
    res.value = best;
    res.omega = direction2d(best_theta);
    if (opt.audit) {
      res.audited = true;
      double dense = std::numeric_limits<double>::infinity();
      for (int k = 0; k < opt.audit_2d; ++k)
        dense = std::min(dense, objective(mask, m, res.r, direction2d(2.0 * M_PI * k / opt.audit_2d)));
      res.audit_value = dense;
    }
    return res;
  }

  // dim == 3
  Eigen::Vector3d best_omega = Eigen::Vector3d::UnitX();
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < opt.coarse_3d; ++k) {
    const Eigen::Vector3d w = sphere_point(k, opt.coarse_3d);
    const double v = objective(mask, m, res.r, w);
    if (v < best) { best = v; best_omega = w; }
  }
  res.coarse_value = best;
  refine_3d(mask, m, res.r, best_omega, opt.refine_tol, best, best_omega, res.refine_evals);
  res.value = best;
  res.omega = best_omega;
  if (opt.audit) {
    res.audited = true;
    double dense = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4 * opt.coarse_3d; ++k)
      dense = std::min(dense, objective(mask, m, res.r, sphere_point(k, 4 * opt.coarse_3d)));
    res.audit_value = dense;
  }
  return res;
}

TransferLemmaCheck transfer_lemma_check(const DomainMask& E, const DomainMask& F, double kappa,
                                        double tol) {
  if (!same_grid(E, F)) throw std::invalid_argument("transfer_lemma_check: grid mismatch");
  if (!(kappa > 0.0 && kappa < 0.5))
    throw std::invalid_argument("transfer_lemma_check: kappa outside (0, 1/2)");

  TransferLemmaCheck out;
  const double gamma_F = gauss_measure(F);
  out.asym_F = fraenkel_asymmetry(F).value;
  out.lhs = symdiff_measure(F, E) / gamma_F;
  out.rhs = kappa * out.asym_F;
  out.applicable = out.lhs <= out.rhs;

  double e_minus_f = 0.0;
  const Eigen::ArrayXd& w = E.grid->cell_weights();
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (E.inside[i] && !F.inside[i]) e_minus_f += w[i];
  out.c_kappa = e_minus_f == 0.0 ? 1.0 : 1.0 + 2.0 * kappa;

  if (out.applicable) {
    out.asym_E = fraenkel_asymmetry(E).value;
    out.ok = out.asym_E >= (1.0 - 2.0 * kappa) / out.c_kappa * out.asym_F - tol;
  }
  return out;
}

}  // namespace gfk
