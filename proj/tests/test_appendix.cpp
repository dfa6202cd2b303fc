#include <cmath>

#include "doctest.h"
#include "fracyam/appendix.hpp"
#include "fracyam/extension_source.hpp"
#include "fracyam/field_integrals.hpp"

using namespace fracyam;

TEST_CASE("rational coefficients at a hand-checked point") {
  // (n, g) = (8, 1.2): I1 = -258.048 / 204.8 = -1.26 exactly
  CHECK(I1_rational(8.0, 1.2) == doctest::Approx(-1.26).epsilon(1e-12));
  CHECK(I1_rational(8.0, 1.2) + I2_rational(8.0, 1.2) > 0.0);
  CHECK(rational_admissible(8.0, 1.2));
  CHECK_FALSE(rational_admissible(6.4, 1.2));  // n = 2g + 4 pole
  CHECK_FALSE(rational_admissible(12.0, 0.9));
}

TEST_CASE("rational route positive over the admissible scan") {
  const C4ScanResult res = C4_sign_scan(8.0, 30.0, 40, 40, {}, true);
  CHECK(res.grid_points > 1000);
  CHECK(res.min_rational_sum > 0.0);
}

TEST_CASE("A-identities hold at (8, 1.2) on the fast grid") {
  const ParamPoint p(8, 1.2);
  const AppendixIntegrals v = compute_A_integrals(p, true);
  const auto res = A_identity_residuals(v, p);
  CHECK(res[0] < 2e-3);
  CHECK(res[1] < 2e-3);
  CHECK(res[2] < 2e-3);
  CHECK(C4_from(v, p) > 0.0);
  CHECK(v.F1 > 0.0);
  CHECK(v.F5 > v.F6);  // F5 includes the normal-derivative part
}

TEST_CASE("appendix integrals reject inadmissible parameters") {
  CHECK_THROWS_AS(compute_A_integrals(ParamPoint(7, 1.5), true),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_A_integrals(ParamPoint(8, 0.9), true),
                  std::invalid_argument);
}

TEST_CASE("logarithmic coefficients at (7,3/2)") {
  const LogIntegralFit fit = log_integrals_72({8, 16, 32, 64}, 1);
  for (int k = 0; k < 5; ++k) {
    CHECK(fit.slopes[k] * fit.references[k] > 0.0);  // signs match
    CHECK(std::fabs(fit.slopes[k] / fit.references[k] - 1.0) < 0.01);
  }
  // doubling the largest ratio moves the fitted slopes by < 0.5%
  const LogIntegralFit fit2 = log_integrals_72({8, 16, 32, 128}, 1);
  for (int k = 0; k < 5; ++k)
    CHECK(std::fabs(fit2.slopes[k] / fit.slopes[k] - 1.0) < 0.005);
  CHECK_THROWS_AS(log_integrals_72({2, 4, 8}, 1), std::invalid_argument);
}

TEST_CASE("A-integrals rescale with the exact dilation power") {
  // every integral int x^a r^b (d^j W)(d^k W) dx picks up
  // eps^{a + b + n + 1 - (n - 2g) - j - k}; for A1 this is eps^4
  const ParamPoint p(9, 1.3);
  auto unit = bubble_source(p, 1.0, true);
  ScaledSource scaled(unit, 2.0);
  std::vector<WeightedTerm> a1 = {
      {4.0 - 2.0 * p.gamma(), kFieldGrad,
       [](const ExtFields& f, double r, double) { return r * f.Wx * f.Wr; }}};
  const double A1_unit = half_space_field_integrals(*unit, p.n(), a1, 120.0, 1)[0];
  const double A1_scaled =
      half_space_field_integrals(scaled, p.n(), a1, 240.0, 1, 2.0)[0];
  CHECK(A1_scaled == doctest::Approx(16.0 * A1_unit).epsilon(1e-5));
}
