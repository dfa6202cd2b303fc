#include <cmath>

#include "doctest.h"
#include "fracyam/gamma.hpp"
#include "fracyam/params.hpp"

using namespace fracyam;

TEST_CASE("gamma at classical points") {
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gamma recurrence over a sample") {
  for (double x : {-9.3, -4.7, -0.7, 0.3, 1.9, 7.5, 24.5, 49.5}) {
    CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
  }
}

TEST_CASE("gamma poles rejected") {
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-3.0), std::domain_error);
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(1) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(2) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
  CHECK(sphere_area(6) == doctest::Approx(16.0 * std::pow(M_PI, 3) / 15.0).epsilon(1e-14));
}

TEST_CASE("param point validation") {
  CHECK_NOTHROW(ParamPoint(3, 0.5));
  CHECK_NOTHROW(ParamPoint(7, 1.5));
  CHECK_THROWS_AS(ParamPoint(3, 1.0005), std::invalid_argument);
  CHECK_THROWS_AS(ParamPoint(3, 1.6), std::invalid_argument);  // gamma >= n/2
  CHECK_THROWS_AS(ParamPoint(1, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(ParamPoint(5, 2.3), std::invalid_argument);
  const ParamPoint p(5, 0.75);
  CHECK(p.m0() == doctest::Approx(-0.5));
  CHECK(p.m1() == doctest::Approx(1.5));
  CHECK(p.regime() == Regime::TypeI);
  CHECK(ParamPoint(7, 1.5).regime() == Regime::TypeII);
}
