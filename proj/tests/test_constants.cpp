#include <cmath>

#include "doctest.h"
#include "fracyam/constants.hpp"
#include "fracyam/gamma.hpp"

using namespace fracyam;

TEST_CASE("frozen constants at (3, 1/2)") {
  const ConstantSet c = constants(ParamPoint(3, 0.5));
  // d_{1/2} = 2 Gamma(1/2)/Gamma(-1/2) = -1, kappa = -d/(2 gamma) = 1
  CHECK(c.d_gamma == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(c.kappa_gamma == doctest::Approx(1.0).epsilon(1e-13));
  // p_{3,1/2} = Gamma(2)/(pi^{3/2} Gamma(1/2)) = 1/pi^2
  CHECK(c.p_n_gamma == doctest::Approx(1.0 / (M_PI * M_PI)).epsilon(1e-13));
  // alpha = 2 (makes the harmonic extension satisfy the trace equation)
  CHECK(c.alpha_n_gamma == doctest::Approx(2.0).epsilon(1e-13));
  // Y = (2 pi^2)^{1/3}
  CHECK(c.Y_sphere == doctest::Approx(std::cbrt(2.0 * M_PI * M_PI)).epsilon(1e-13));
}

TEST_CASE("frozen constants at (7, 3/2)") {
  const ConstantSet c = constants(ParamPoint(7, 1.5));
  CHECK(c.d_gamma == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(c.kappa_gamma == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(c.p_n_gamma == doctest::Approx(48.0 / std::pow(M_PI, 4)).epsilon(1e-13));
  // alpha_{7,3/2} = 16 * 3^{2/3}
  CHECK(c.alpha_n_gamma == doctest::Approx(16.0 * std::cbrt(9.0)).epsilon(1e-12));
  // Y = 24 (pi^4/3)^{3/7}
  CHECK(c.Y_sphere ==
        doctest::Approx(24.0 * std::pow(std::pow(M_PI, 4) / 3.0, 3.0 / 7.0))
            .epsilon(1e-12));
}

TEST_CASE("kappa positive and Yamabe identity on a grid") {
  for (int n = 2; n <= 16; ++n)
    for (double g = 0.1; g < 1.95; g += 0.18) {
      if (std::fabs(g - 1.0) < 5e-3 || !(g < 0.5 * n)) continue;
      const ConstantSet c = constants(ParamPoint(n, g));
      CHECK(c.kappa_gamma > 0.0);
      CHECK(c.Y_sphere * c.S_n_gamma ==
            doctest::Approx(c.kappa_gamma).epsilon(1e-14));
    }
}

TEST_CASE("poisson normalization equals one") {
  CHECK(poisson_normalization_check(ParamPoint(3, 0.5), 1.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(poisson_normalization_check(ParamPoint(7, 1.5), 0.1) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(poisson_normalization_check(ParamPoint(4, 0.75), 10.0) ==
        doctest::Approx(1e0).epsilon(1e-8));
  CHECK_THROWS_AS(poisson_normalization_check(ParamPoint(3, 0.5), 0.0),
                  std::invalid_argument);
}
