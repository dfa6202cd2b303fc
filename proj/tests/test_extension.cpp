#include <cmath>

#include "doctest.h"
#include "fracyam/bubble.hpp"
#include "fracyam/extension_verify.hpp"

using namespace fracyam;

namespace {

RadialProfile closed_profile_7_15(int m, double lo = 5e-2, double hi = 5.0) {
  const ParamPoint p(7, 1.5);
  return build_profile(
      p, [](double r, double x) { return W_closed_form(1.0, r, x); },
      log_grid(lo, hi, m), log_grid(lo, hi, m));
}

}  // namespace

TEST_CASE("second-order residual vanishes under refinement for (7,3/2)") {
  const ParamPoint p(7, 1.5);
  const double r1 = residual_second_order_max(p, closed_profile_7_15(60));
  const double r2 = residual_second_order_max(p, closed_profile_7_15(120));
  CHECK(r2 < r1);
  CHECK(r2 < 1e-4);
  // measured order within +-0.5 of the 4th-order stencils (per refinement
  // halving the log step)
  const double order = std::log2(r1 / r2);
  CHECK(order > 3.0);
}

TEST_CASE("constant profile is exactly weighted-harmonic") {
  const ParamPoint p(3, 0.5);
  auto prof = build_profile(p, [](double, double) { return 1.0; },
                            log_grid(0.1, 2.0, 24), log_grid(0.1, 2.0, 24));
  CHECK(residual_second_order_max(p, prof) < 1e-11);
}

TEST_CASE("perturbed profile fails the residual check") {
  const ParamPoint p(7, 1.5);
  auto prof = build_profile(
      p,
      [](double r, double x) { return W_closed_form(1.0, r, x) * (1.0 + 0.01 * x); },
      log_grid(5e-2, 5.0, 80), log_grid(5e-2, 5.0, 80));
  CHECK(residual_second_order_max(p, prof) > 1e-4);
}

TEST_CASE("fourth-order identity holds for (7,3/2) and flags bad profiles") {
  const ParamPoint p(7, 1.5);
  CHECK(identity_DW_max(p, closed_profile_7_15(200)) < 2e-5);
  auto bad = build_profile(p, [](double, double x) { return x; },
                           log_grid(0.1, 2.0, 32), log_grid(0.1, 2.0, 32));
  CHECK(identity_DW_max(p, bad) > 1e-2);
  const VerificationReport rep = identity_DW(p, bad, 1e-6);
  CHECK(rep.status == CheckStatus::fail);
}

TEST_CASE("biharmonic residual small for the closed form") {
  const ParamPoint p(7, 1.5);
  CHECK(biharmonic_residual_max(p, closed_profile_7_15(140, 8e-2, 4.0)) < 1e-2);
}

TEST_CASE("neumann trace types I and II") {
  const ParamPoint p3(3, 0.5);
  const TraceResult t3 = neumann_trace(
      p3, [](double r, double x) { return cf_fields_3_05(1.0, r, x, kFieldW).W; },
      [&](double r) { return w_eval(p3, 1.0, r); }, {0.0, 1.0, 3.0});
  CHECK(t3.max_rel_dev < 1e-6);

  const ParamPoint p7(7, 1.5);
  const TraceResult t7 = neumann_trace(
      p7, [](double r, double x) { return W_closed_form(1.0, r, x); },
      [&](double r) { return w_eval(p7, 1.0, r); }, {0.0, 0.5, 2.0});
  CHECK(t7.max_rel_dev < 1e-4);
  CHECK(t7.first_limit < 1e-6);
}

TEST_CASE("norm growth classification at closed-form points") {
  const std::vector<double> ratios = {4, 8, 16, 32, 64};
  // (3, 0.5), k = 0: n - 2g - 2 = 0 -> logarithmic
  const NormGrowthResult log_case = norm_growth(ParamPoint(3, 0.5), 0, ratios, true);
  CHECK(log_case.predicted == GrowthRegime::logarithmic);
  CHECK(log_case.observed == GrowthRegime::logarithmic);
  // (3, 0.5), k = 2: power with exponent 2
  const NormGrowthResult pow_case = norm_growth(ParamPoint(3, 0.5), 2, ratios, true);
  CHECK(pow_case.predicted == GrowthRegime::power);
  CHECK(pow_case.observed == GrowthRegime::power);
  CHECK(pow_case.observed_exponent == doctest::Approx(2.0).epsilon(0.1));
  // (7, 1.5), k = 0: TypeII logarithmic
  const NormGrowthResult t2 = norm_growth(ParamPoint(7, 1.5), 0, ratios, true);
  CHECK(t2.predicted == GrowthRegime::logarithmic);
  CHECK(t2.observed == GrowthRegime::logarithmic);

  CHECK_THROWS_AS(norm_growth(ParamPoint(3, 0.5), 0, {4, 9, 16}, true),
                  std::invalid_argument);
}
