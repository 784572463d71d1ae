#include <doctest.h>

#include <cmath>

#include "gfk/eigensolver.hpp"
#include "gfk/profile.hpp"
#include "gfk/shapes.hpp"
#include "oracles.hpp"

using namespace gfk;

TEST_CASE("operators on degenerate masks") {
  const auto grid = make_grid(2, 64, 6.0);

  DomainMask one = empty_mask(grid);
  const Eigen::Index mid = grid->index({32, 32, 0});
  one.inside[mid] = 1;
  GridOperators ops(one);
  CHECK(ops.dofs() == 1);
  Eigen::VectorXd u1 = Eigen::VectorXd::Ones(1);
  CHECK(ops.stiffness_quadratic(u1) > 0.0);
  CHECK(ops.mass_quadratic(u1) == doctest::Approx(grid->cell_weight(mid)).epsilon(1e-14));

  CHECK_THROWS(GridOperators(empty_mask(grid)));

  // gradient of a constant on the full box is zero (box faces are natural)
  GridOperators full(full_mask(grid));
  CHECK(full.stiffness_quadratic(Eigen::VectorXd::Ones(full.dofs())) == 0.0);
  CHECK_FALSE(full.has_dirichlet_boundary());
}

TEST_CASE("dirichlet energy of the coordinate function") {
  const auto grid = make_grid(2, 128, 6.0);
  Eigen::ArrayXd u(grid->cell_count());
  for (Eigen::Index c = 0; c < grid->cell_count(); ++c) u[c] = grid->center(c)[0];
  // |grad x_1|^2 = 1, so the energy is the box mass (the outer half-cell rim
  // carries only tail weight)
  CHECK(dirichlet_energy(grid, u) == doctest::Approx(grid->box_mass()).epsilon(1e-3));
}

TEST_CASE("first eigenpair on the axis halfspace") {
  const auto grid = make_grid(2, 128, 6.0);
  const auto mask = rasterize(grid, Halfspace(Eigen::Vector2d(1, 0), 0.0));
  const auto res = first_eigenpair(mask, 1e-8);
  CHECK(res.lambda == doctest::Approx(1.0).epsilon(0.01));
  CHECK(res.residual <= 1e-8);
  CHECK((res.u >= 0.0).all());
  CHECK_FALSE(res.connectivity_warning);

  // normalization in the mass inner product
  double norm = 0.0;
  for (Eigen::Index c = 0; c < grid->cell_count(); ++c)
    norm += res.u[c] * res.u[c] * grid->cell_weight(c);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));

  // exact eigenfunction -x_1 as a Rayleigh competitor
  Eigen::ArrayXd v(grid->cell_count());
  for (Eigen::Index c = 0; c < grid->cell_count(); ++c) {
    const double x = grid->center(c)[0];
    v[c] = mask.cell(c) ? -x : 0.0;
  }
  CHECK(rayleigh(v, mask) == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("rotation invariance and the 1-D profile oracle") {
  const auto grid = make_grid(2, 128, 6.0);
  const double want = lambda_halfline(0.0, 1e-3);
  for (double theta : {M_PI / 8, M_PI / 4, 0.9}) {
    const auto mask = rasterize(grid, Halfspace(direction2d(theta), 0.0));
    const double got = first_eigenpair(mask, 1e-8).lambda;
    CHECK(std::abs(got - want) / want < 0.01);
  }
  const auto grid08 = make_grid(2, 128, default_box(0.8));
  const auto tilted = rasterize(grid08, Halfspace(direction2d(0.6), 0.8));
  const double got = first_eigenpair(tilted, 1e-8).lambda;
  CHECK(std::abs(got - lambda_halfline(0.8, 1e-3)) / lambda_halfline(0.8, 1e-3) < 0.015);
}

TEST_CASE("1-D interval against the tridiagonal oracle") {
  const auto grid = make_grid(1, 256, 6.0);
  const auto mask = make_ball_mask(grid, 1.0, Eigen::VectorXd::Zero(1));
  const auto res = first_eigenpair(mask, 1e-10);
  // oracle on the effective (face-aligned) interval of the rasterization
  int first_in = -1, last_in = -1;
  for (int i = 0; i < grid->n(); ++i)
    if (mask.cell(i)) {
      if (first_in < 0) first_in = i;
      last_in = i;
    }
  const double a = grid->axis_node(first_in);
  const double b = grid->axis_node(last_in + 1);
  const double want = oracle::interval_lambda(a, b, 1e-4);
  CHECK(std::abs(res.lambda - want) / want < 5e-3);
}

TEST_CASE("domain monotonicity of the first eigenvalue") {
  const auto grid = make_grid(2, 96, 6.0);
  const auto inner = make_wedge_mask(grid, 2.0);
  const auto outer = make_wedge_mask(grid, 2.5);
  const double li = first_eigenpair(inner, 1e-8).lambda;
  const double lo = first_eigenpair(outer, 1e-8).lambda;
  CHECK(li >= lo - 1e-6);
}

TEST_CASE("grid refinement behaves second order") {
  // Richardson ratio between successive refinements should sit near 4
  const double reference = lambda_halfline(0.0, 1e-3);
  double err64 = 0.0, err128 = 0.0;
  for (int n : {64, 128}) {
    const auto grid = make_grid(2, n, 6.0);
    const auto mask = rasterize(grid, Halfspace(Eigen::Vector2d(1, 0), 0.0));
    const double lam = first_eigenpair(mask, 1e-9).lambda;
    (n == 64 ? err64 : err128) = std::abs(lam - reference);
  }
  const double ratio = err64 / err128;
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("3-D halfspaces") {
  const auto grid = make_grid(3, 48, 6.0);
  const auto axis = rasterize(grid, Halfspace(Eigen::Vector3d(1, 0, 0), 0.0));
  const auto res_axis = first_eigenpair(axis, 1e-8);
  CHECK(res_axis.lambda == doctest::Approx(1.0).epsilon(0.01));
  CHECK(res_axis.residual <= 1e-8);
  CHECK((res_axis.u >= 0.0).all());

  const auto tilted = rasterize(grid, Halfspace(Eigen::Vector3d(1, 1, 0.5), 0.3));
  const auto res_tilt = first_eigenpair(tilted, 1e-8);
  const double want = lambda_halfline(phi_inv(gauss_measure(tilted)), 1e-3);
  CHECK(std::abs(res_tilt.lambda - want) / want < 0.01);
}

TEST_CASE("disconnected masks solve the best component") {
  const auto grid = make_grid(2, 96, 6.0);
  const auto slabs = make_two_slabs_mask(grid, -0.3, 0.7, 0.4);
  const auto res = first_eigenpair(slabs, 1e-8);
  CHECK(res.connectivity_warning);
  CHECK(res.components == 2);

  const auto part_a = rasterize(grid, Halfspace(Eigen::Vector2d(1, 0), -0.3));
  const auto part_b = make_two_slabs_mask(grid, -20.0, 0.7, 0.4);  // slab only
  const double la = first_eigenpair(part_a, 1e-8).lambda;
  const double lb = first_eigenpair(part_b, 1e-8).lambda;
  CHECK(res.lambda == doctest::Approx(std::min(la, lb)).epsilon(1e-6));
}

TEST_CASE("competitor level truncation") {
  const auto grid = make_grid(2, 96, 6.0);
  const auto wedge = make_wedge_mask(grid, 2.2);
  const auto res = first_eigenpair(wedge, 1e-8);
  const double T = 0.4 * res.u.maxCoeff();
  Eigen::ArrayXd trunc = (res.u - T).max(0.0);
  const auto level_set = superlevel_mask(grid, res.u, T);
  const double lam_level = first_eigenpair(level_set, 1e-8).lambda;
  CHECK(rayleigh(trunc, wedge) >= lam_level - 1e-6);
  CHECK(rayleigh(trunc, wedge) >= res.lambda - 1e-6);  // minimality
}

TEST_CASE("rayleigh validation") {
  const auto grid = make_grid(2, 64, 6.0);
  const auto wedge = make_wedge_mask(grid, 2.2);
  CHECK_THROWS(rayleigh(Eigen::ArrayXd::Zero(grid->cell_count()), wedge));
  Eigen::ArrayXd bad = Eigen::ArrayXd::Ones(grid->cell_count());
  CHECK_THROWS(rayleigh(bad, wedge));  // does not vanish outside
}

TEST_CASE("level profile of the halfspace eigenfunction") {
  const auto grid = make_grid(2, 256, 6.0);
  const auto mask = rasterize(grid, Halfspace(Eigen::Vector2d(1, 0), 0.0));
  const auto res = first_eigenpair(mask, 1e-8);
  const auto lp = level_profile(grid, res, 64);

  CHECK(lp.mu[0] == doctest::Approx(gauss_measure(mask)).epsilon(1e-6));
  for (int j = 0; j + 1 < 64; ++j) CHECK(lp.mu[j + 1] <= lp.mu[j]);
  CHECK_THROWS(level_profile(grid, res, 4));

  // level-curve identity: with the classical profile I/sqrt(2 pi) the sum
  // of I_cl(mu)^2 / (-mu') dt reproduces the Dirichlet energy
  double acc = 0.0;
  const double dt = lp.t[1] - lp.t[0];
  for (int j = 0; j < 64; ++j) {
    if (lp.floored[j] || !(lp.mu[j] > 1e-12) || !(lp.mu[j] < 1.0 - 1e-12)) continue;
    const double iso = iso_profile(lp.mu[j]) / sqrt_2pi;
    acc += iso * iso / lp.minus_mu_prime[j] * dt;
  }
  CHECK(acc == doctest::Approx(res.lambda).epsilon(0.05));
}
