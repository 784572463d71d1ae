#include "gfk/eigensolver.hpp"

#include <cmath>

namespace gfk {

namespace {

// Sub-cell Dirichlet gap: fraction of h from the inside center to the 0.5
// crossing of the smoothed indicator, clamped away from degenerate values.
double boundary_gap_fraction(double s_in, double s_out) {
  if (!(s_in > 0.5) || !(s_out < 0.5)) return 0.5;
  const double t = (s_in - 0.5) / (s_in - s_out);
  return std::min(1.0, std::max(0.1, t));
}

}  // namespace

GridOperators::GridOperators(const DomainMask& mask) : mask_(mask) {
  const auto& g = *mask.grid;
  const int dim = g.dim();
  const int n = g.n();
  const double h = g.h();

  dof_of_cell_.assign(g.cell_count(), -1);
  for (Eigen::Index c = 0; c < g.cell_count(); ++c) {
    if (mask.inside[c]) {
      dof_of_cell_[c] = dof_count_++;
      cell_of_dof_.push_back(c);
    }
  }
  if (dof_count_ == 0) throw std::invalid_argument("GridOperators: empty mask");

  mass_.resize(dof_count_);
  for (Eigen::Index d = 0; d < dof_count_; ++d) mass_[d] = g.cell_weight(cell_of_dof_[d]);

  const Eigen::ArrayXd s = smoothed_indicator(mask);
  k_diag_ = Eigen::ArrayXd::Zero(dof_count_);

  for (Eigen::Index c = 0; c < g.cell_count(); ++c) {
    if (!mask.inside[c]) continue;
    const auto mi = g.multi_index(c);
    const Eigen::Index dc = dof_of_cell_[c];

    for (int a = 0; a < dim; ++a) {
      // Exact Gaussian mass of the cell cross-section orthogonal to axis a.
      double cross = 1.0;
      for (int b = 0; b < dim; ++b)
        if (b != a) cross *= g.axis_weight(mi[b]);

      for (int dir = -1; dir <= 1; dir += 2) {
        if (dir < 0 && mi[a] == 0) continue;      // box face: natural
        if (dir > 0 && mi[a] == n - 1) continue;  // box face: natural
        const Eigen::Index nb = c + dir * g.stride(a);
        const double face_x = g.axis_center(mi[a]) + dir * 0.5 * h;
        if (mask.inside[nb]) {
          if (dir < 0) continue;  // interior faces once, in the + direction
          const double coeff = cross * gauss_density1(face_x) / h;
          faces_.push_back({dc, dof_of_cell_[nb], coeff});
          k_diag_[dc] += coeff;
          k_diag_[dof_of_cell_[nb]] += coeff;
        } else {
          const double frac = boundary_gap_fraction(s[c], s[nb]);
          const double gap_x = g.axis_center(mi[a]) + dir * frac * h;
          const double coeff = cross * gauss_density1(gap_x) / (frac * h);
          boundary_.push_back({dc, coeff});
          k_diag_[dc] += coeff;
        }
      }
    }
  }
}

Eigen::VectorXd GridOperators::apply_stiffness(const Eigen::VectorXd& u) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(dof_count_);
  for (const auto& f : faces_) {
    const double flux = f.coeff * (u[f.a] - u[f.b]);
    y[f.a] += flux;
    y[f.b] -= flux;
  }
  for (const auto& b : boundary_) y[b.a] += b.coeff * u[b.a];
  return y;
}

double GridOperators::stiffness_quadratic(const Eigen::VectorXd& u) const {
  double q = 0.0;
  for (const auto& f : faces_) {
    const double d = u[f.a] - u[f.b];
    q += f.coeff * d * d;
  }
  for (const auto& b : boundary_) q += b.coeff * u[b.a] * u[b.a];
  return q;
}

Eigen::ArrayXd GridOperators::to_grid(const Eigen::VectorXd& u) const {
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(mask_.grid->cell_count());
  for (Eigen::Index d = 0; d < dof_count_; ++d) out[cell_of_dof_[d]] = u[d];
  return out;
}

Eigen::VectorXd GridOperators::from_grid(const Eigen::ArrayXd& grid_values) const {
  Eigen::VectorXd out(dof_count_);
  for (Eigen::Index d = 0; d < dof_count_; ++d) out[d] = grid_values[cell_of_dof_[d]];
  return out;
}

namespace {

// Jacobi-preconditioned CG for K y = b.
Eigen::VectorXd cg_solve(const GridOperators& ops, const Eigen::VectorXd& b, double rtol,
                         int max_iter, const Eigen::VectorXd& x0) {
  const Eigen::ArrayXd inv_diag = ops.stiffness_diagonal().max(1e-300).inverse();
  Eigen::VectorXd x = x0;
  Eigen::VectorXd r = b - ops.apply_stiffness(x);
  Eigen::VectorXd z = (inv_diag * r.array()).matrix();
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  const double b_norm = b.norm();
  if (b_norm == 0.0) return Eigen::VectorXd::Zero(b.size());
  for (int it = 0; it < max_iter; ++it) {
    if (r.norm() <= rtol * b_norm) break;
    const Eigen::VectorXd kp = ops.apply_stiffness(p);
    const double alpha = rz / p.dot(kp);
    x += alpha * p;
    r -= alpha * kp;
    z = (inv_diag * r.array()).matrix();
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  if (!(r.norm() <= rtol * b_norm * 100)) {
    throw SolverError("inner CG stagnated; residual " + std::to_string(r.norm() / b_norm),
                      r.norm() / b_norm);
  }
  return x;
}

}  // namespace

EigenResult first_eigenpair(const DomainMask& mask, double tol) {
  if (!(gauss_measure(mask) > 0.0))
    throw std::invalid_argument("first_eigenpair: mask has zero measure");

  GridOperators ops(mask);
  EigenResult res;
  res.components = component_count(mask);
  res.connectivity_warning = res.components > 1;

  if (!ops.has_dirichlet_boundary()) {
    // Full box: the whole-space problem, whose first eigenfunction is the
    // constant with eigenvalue zero.
    Eigen::VectorXd u = Eigen::VectorXd::Ones(ops.dofs());
    u /= std::sqrt(ops.mass_quadratic(u));
    res.lambda = 0.0;
    res.u = ops.to_grid(u);
    res.residual = 0.0;
    res.iterations = 0;
    return res;
  }

  const Eigen::Index nd = ops.dofs();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(nd);
  x /= std::sqrt(ops.mass_quadratic(x));
  double lambda = ops.stiffness_quadratic(x);

  const int max_outer = 200;
  const int max_inner = 20000;
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  Eigen::VectorXd y = x;
  for (; it < max_outer; ++it) {
    y = cg_solve(ops, ops.apply_mass(x), 1e-10, max_inner, y);
    const double norm = std::sqrt(ops.mass_quadratic(y));
    if (!(norm > 0.0)) throw SolverError("inverse iteration collapsed", residual);
    x = y / norm;
    lambda = ops.stiffness_quadratic(x);
    const Eigen::VectorXd r =
        ops.apply_stiffness(x) - lambda * ops.apply_mass(x);
    residual = std::sqrt((ops.mass_diagonal() * r.array().square()).sum());
    if (residual <= tol) break;
  }
  if (residual > tol)
    throw SolverError("inverse iteration did not reach tolerance; residual " +
                          std::to_string(residual),
                      residual);

  // Perron sign and positivity: flip to the positive branch, clamp the
  // tiny negative leakage, renormalize, and report the honest residual.
  if ((ops.mass_diagonal() * x.array()).sum() < 0.0) x = -x;
  x = x.cwiseMax(0.0);
  x /= std::sqrt(ops.mass_quadratic(x));
  lambda = ops.stiffness_quadratic(x);
  const Eigen::VectorXd r = ops.apply_stiffness(x) - lambda * ops.apply_mass(x);
  res.residual = std::sqrt((ops.mass_diagonal() * r.array().square()).sum());
  res.lambda = lambda;
  res.u = ops.to_grid(x);
  res.iterations = it + 1;
  return res;
}

double rayleigh(const Eigen::ArrayXd& u, const DomainMask& mask) {
  if (u.size() != mask.grid->cell_count())
    throw std::invalid_argument("rayleigh: size mismatch");
  for (Eigen::Index c = 0; c < u.size(); ++c)
    if (!mask.inside[c] && u[c] != 0.0)
      throw std::invalid_argument("rayleigh: u does not vanish outside the mask");
  GridOperators ops(mask);
  const Eigen::VectorXd v = ops.from_grid(u);
  const double m = ops.mass_quadratic(v);
  if (!(m > 0.0)) throw std::invalid_argument("rayleigh: u is zero");
  return ops.stiffness_quadratic(v) / m;
}

double dirichlet_energy(const GridPtr& grid, const Eigen::ArrayXd& u) {
  GridOperators ops(full_mask(grid));
  return ops.stiffness_quadratic(ops.from_grid(u));
}

LevelProfile level_profile(const GridPtr& grid, const EigenResult& res, int n_levels) {
  if (n_levels < 8) throw std::invalid_argument("level_profile: need n_levels >= 8");
  const double umax = res.u.maxCoeff();
  LevelProfile lp;
  lp.t.resize(n_levels);
  lp.mu.resize(n_levels);
  lp.minus_mu_prime.resize(n_levels);
  lp.floored.resize(n_levels);
  const double dt = umax / n_levels;
  const Eigen::ArrayXd& w = grid->cell_weights();
  for (int j = 0; j < n_levels; ++j) {
    lp.t[j] = dt * j;
    double m = 0.0;
    for (Eigen::Index c = 0; c < w.size(); ++c)
      if (res.u[c] > lp.t[j]) m += w[c];
    lp.mu[j] = m;
  }
  for (int j = 0; j < n_levels; ++j) {
    double slope;
    if (j == 0) slope = (lp.mu[0] - lp.mu[1]) / dt;
    else if (j == n_levels - 1) slope = (lp.mu[j - 1] - lp.mu[j]) / dt;
    else slope = (lp.mu[j - 1] - lp.mu[j + 1]) / (2.0 * dt);
    lp.floored[j] = slope < 1e-12;
    lp.minus_mu_prime[j] = lp.floored[j] ? 0.0 : slope;
  }
  return lp;
}

}  // namespace gfk
