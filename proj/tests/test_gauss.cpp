#include <doctest.h>

#include <cmath>
#include <random>

#include "gfk/gauss.hpp"
#include "oracles.hpp"

using namespace gfk;

TEST_CASE("phi at the symmetry point and complement") {
  CHECK(phi(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  std::mt19937 rng(91);
  std::uniform_real_distribution<double> xs(-7.0, 7.0);
  for (int i = 0; i < 200; ++i) {
    const double r = xs(rng);
    CHECK(phi(r) + phi(-r) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("phi against the quadrature oracle") {
  // Frozen from the quadrature oracle (16-point Gauss-Legendre panels).
  CHECK(phi(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-12));
  for (double r : {-8.0, -5.0, -2.5, -1.0, -0.3, 0.2, 0.7, 1.3, 2.0, 4.0, 6.0, 8.0}) {
    const double want = oracle::phi_quadrature(r);
    CHECK(std::abs(phi(r) - want) <= 1e-12 * want);
  }
}

TEST_CASE("phi rejects non-finite input") {
  CHECK_THROWS_AS(phi(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(phi(std::nan("")), std::domain_error);
}

TEST_CASE("phi_inv basics") {
  CHECK(phi_inv(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(phi_inv(phi(1.3)) == doctest::Approx(1.3).epsilon(1e-10));
  CHECK(phi_inv(0.841344746) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(phi_inv(0.0), std::domain_error);
  CHECK_THROWS_AS(phi_inv(1.0), std::domain_error);
  CHECK_THROWS_AS(phi_inv(-2.0), std::domain_error);
}

TEST_CASE("phi/phi_inv round trip over (0,1)") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> logu(std::log(1e-8), std::log(0.5));
  for (int i = 0; i < 500; ++i) {
    const double half = std::exp(logu(rng));
    for (double m : {half, 1.0 - half}) {
      CHECK(std::abs(phi(phi_inv(m)) - m) <= 1e-10);
    }
  }
  // monotonicity on a sweep
  double prev = phi_inv(1e-6);
  for (double m = 1e-3; m < 1.0 - 1e-7; m += 1e-3) {
    const double r = phi_inv(m);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("iso_profile values and symmetry") {
  CHECK(iso_profile(0.5) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(iso_profile(0.841344746) == doctest::Approx(std::exp(-0.5)).epsilon(1e-7));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ms(1e-6, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double m = ms(rng);
    CHECK(iso_profile(m) == doctest::Approx(iso_profile(1.0 - m)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(iso_profile(0.0), std::domain_error);
  CHECK_THROWS_AS(iso_profile(1.0), std::domain_error);
}
