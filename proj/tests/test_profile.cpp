#include <doctest.h>

#include <cmath>

#include "gfk/gauss.hpp"
#include "gfk/profile.hpp"
#include "oracles.hpp"

using namespace gfk;

// Values frozen from the shooting oracle (Numerov, step 1e-5, tail 12).
namespace frozen {
constexpr double lambda1_rm2 = 3.424815709673;
constexpr double lambda1_r095 = 0.410470317169;
constexpr double lambda1_r1 = 0.388238291864;
constexpr double lambda1_r2 = 0.097274591550;
constexpr double lambda2_rm2 = 6.223165048611;
constexpr double lambda2_rm1 = 4.401131601057;
constexpr double lambda2_r2 = 1.375124972656;
constexpr double lipschitz_constant_q2 = 2.004828453060;  // L on (0.25,0.5], 64 samples
}  // namespace frozen

TEST_CASE("analytic halfline anchors") {
  // u(x) = -x solves -u'' + x u' = u on (-inf,0) with u(0)=0.
  CHECK(lambda_halfline(0.0) == doctest::Approx(1.0).epsilon(1e-5));
  // H3(x) = x^3 - 3x vanishes at 0 and satisfies -u'' + x u' = 3u.
  CHECK(lambda2_halfline(0.0) == doctest::Approx(3.0).epsilon(1e-4));
  // x^2 - 1 vanishes at -1 (first eigenfunction there) and at +1, where it
  // has one interior node, so Lambda(-1) = 2 and lambda_2(1) = 2 exactly.
  CHECK(lambda_halfline(-1.0) == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(lambda2_halfline(1.0) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("halfline eigenvalues match the shooting oracle") {
  CHECK(std::abs(lambda_halfline(-2.0) - frozen::lambda1_rm2) < 1e-5);
  CHECK(std::abs(lambda_halfline(1.0) - frozen::lambda1_r1) < 1e-5);
  CHECK(std::abs(lambda_halfline(2.0) - frozen::lambda1_r2) < 1e-5);
  CHECK(std::abs(lambda2_halfline(-2.0) - frozen::lambda2_rm2) < 1e-4);
  CHECK(std::abs(lambda2_halfline(-1.0) - frozen::lambda2_rm1) < 1e-4);
  CHECK(std::abs(lambda2_halfline(2.0) - frozen::lambda2_r2) < 1e-4);
}

TEST_CASE("strict spectral ordering and monotonicity in r") {
  double prev1 = std::numeric_limits<double>::infinity();
  for (double r = -3.0; r <= 3.0 + 1e-12; r += 0.25) {
    const double l1 = lambda_halfline(r, 2e-3);
    const double l2 = lambda2_halfline(r, 2e-3);
    CHECK(l2 > l1);
    CHECK(l1 > 0.0);
    CHECK(l1 < prev1);
    prev1 = l1;
  }
}

TEST_CASE("rejects bad inputs") {
  CHECK_THROWS(lambda_halfline(0.0, 0.5));  // step above 1e-2
  CHECK_THROWS(lambda_halfline(std::numeric_limits<double>::quiet_NaN()));
  CHECK_THROWS(lambda_halfline(0.0, 1e-3, 4.0));  // tail below 12
}

TEST_CASE("first eigenfunction in OU variables") {
  const auto fn = halfline_first_eigenfunction(0.0, 1e-3);
  CHECK(fn.lambda == doctest::Approx(1.0).epsilon(1e-5));
  // compare against u(x) = -sqrt(2) x on a few interior points
  for (double x : {-0.5, -1.0, -2.0, -3.0}) {
    Eigen::Index j = 0;
    (fn.x - x).abs().minCoeff(&j);
    CHECK(fn.u[j] == doctest::Approx(-std::sqrt(2.0) * fn.x[j]).epsilon(1e-4));
  }
  // normalization: sum u^2 against gamma_1 cell masses
  double norm = 0.0;
  for (Eigen::Index i = 0; i < fn.x.size(); ++i) {
    norm += fn.u[i] * fn.u[i] * gauss_density1(fn.x[i]) * fn.step;
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-3));
  CHECK((fn.u >= 0.0).all());
}

TEST_CASE("g profile values") {
  CHECK(g_profile(0.5) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(g_profile(0.841344746) == doctest::Approx(frozen::lambda1_r1).epsilon(1e-5));
  double prev = std::numeric_limits<double>::infinity();
  for (double m = 0.05; m < 0.99; m += 0.05) {
    const double g = g_profile(m, 2e-3);
    CHECK(g < prev);
    prev = g;
  }
  CHECK_THROWS_AS(g_profile(0.0), std::domain_error);
  CHECK_THROWS_AS(g_profile(1.0), std::domain_error);
}

TEST_CASE("g inverse") {
  CHECK(g_inverse(1.0, 0.1, 0.9) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(g_inverse(frozen::lambda1_r1, 0.5, 0.99) ==
        doctest::Approx(phi(1.0)).epsilon(1e-5));
  for (double m : {0.2, 0.35, 0.6, 0.8}) {
    CHECK(g_inverse(g_profile(m), 0.05, 0.95) == doctest::Approx(m).epsilon(1e-6));
  }
  CHECK_THROWS(g_inverse(100.0, 0.4, 0.6));
}

TEST_CASE("profile table interpolates the solver") {
  const ProfileTable table(-1.5, 1.5, 0.1, 1e-3);
  for (double r : {-1.23, -0.44, 0.07, 0.61, 1.38}) {
    CHECK(table.lambda(r) == doctest::Approx(lambda_halfline(r)).epsilon(2e-5));
    CHECK(table.lambda2(r) == doctest::Approx(lambda2_halfline(r)).epsilon(2e-5));
  }
  CHECK(table.g(0.5) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS(table.lambda(2.0));
}

TEST_CASE("forward difference ratio obeys the derivative bound") {
  const auto at0 = lipschitz_forward_check(0.0, 0.1);
  CHECK(at0.ok);
  CHECK(at0.ratio >= 0.0);
  CHECK(at0.ratio <= std::sqrt(1.0) + 0.025 + at0.tol);

  // frozen oracle difference at r=1, h=0.05
  const auto at1 = lipschitz_forward_check(1.0, 0.05);
  CHECK(at1.ok);
  const double oracle_ratio = (frozen::lambda1_r095 - frozen::lambda1_r1) / 0.05;
  CHECK(at1.ratio == doctest::Approx(oracle_ratio).epsilon(1e-3));

  for (double r = -2.0; r <= 2.0 + 1e-12; r += 0.5) {
    for (double h : {0.2, 0.1, 0.05}) {
      const auto c = lipschitz_forward_check(r, h, 2e-3);
      CHECK(c.ok);
      CHECK(c.ratio >= 0.0);
    }
  }
}

TEST_CASE("convexity of the halfspace eigenvalue curve") {
  Eigen::ArrayXd coarse(3);
  coarse << -1.0, 0.0, 1.0;
  const auto c3 = convexity_check(coarse);
  CHECK(c3.ok);

  Eigen::ArrayXd grid(41);
  for (int i = 0; i < 41; ++i) grid[i] = -2.0 + 0.1 * i;
  const auto dense = convexity_check(grid, 1e-4, 1e-3);
  CHECK(dense.ok);
  CHECK(dense.min_second_diff >= -1e-4);

  Eigen::ArrayXd nonuniform(3);
  nonuniform << 0.0, 0.1, 0.5;
  CHECK_THROWS(convexity_check(nonuniform));
}

TEST_CASE("local lipschitz constant of g") {
  const auto est = local_lipschitz_L(0.25, 0.5, 64);
  CHECK(est.L > 0.0);
  CHECK(est.L == doctest::Approx(frozen::lipschitz_constant_q2).epsilon(1e-6));
  // mean-slope upper bound
  const double mean_slope = (g_profile(0.25) - g_profile(0.5)) / 0.25;
  CHECK(est.L <= mean_slope + 1e-9);

  // same sampling computed through the shooting oracle
  double l_shoot = std::numeric_limits<double>::infinity();
  const double dm = 0.25 / 64;
  double prev = oracle::shooting_lambda(phi_inv(0.25 + dm), 1, 1e-4);
  for (int j = 2; j <= 64; ++j) {
    const double cur = oracle::shooting_lambda(phi_inv(0.25 + dm * j), 1, 1e-4);
    l_shoot = std::min(l_shoot, (prev - cur) / dm);
    prev = cur;
  }
  CHECK(est.L == doctest::Approx(l_shoot).epsilon(1e-5));
}
