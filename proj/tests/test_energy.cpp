#include <cmath>

#include "doctest.h"
#include "fracyam/constants.hpp"
#include "fracyam/energy.hpp"
#include "fracyam/gamma.hpp"
#include "fracyam/quadrature.hpp"

using namespace fracyam;

TEST_CASE("cutoff support and smoothness") {
  Cutoff cut(0.5);
  CHECK(cut.chi(0.3) == 1.0);
  CHECK(cut.chi(0.5) == 1.0);
  CHECK(cut.chi(1.0) == 0.0);
  CHECK(cut.chi(0.7) > 0.0);
  CHECK(cut.chi(0.7) < 1.0);
  // C^1 in v: finite differences of chi_v match dchi_v
  const double v = 0.45, h = 1e-6;
  CHECK(cut.dchi_v(v) ==
        doctest::Approx((cut.chi_v(v + h) - cut.chi_v(v - h)) / (2 * h)).epsilon(1e-5));
  CHECK(cut.d2chi_v(v) ==
        doctest::Approx((cut.dchi_v(v + h) - cut.dchi_v(v - h)) / (2 * h))
            .epsilon(1e-4));
}

TEST_CASE("bubble energy equals the sphere constant (TypeI)") {
  const ParamPoint p(3, 0.5);
  ClosedFormSource W(p, 1.0);
  const double E = energy_bar(W);
  CHECK(E == doctest::Approx(constants(p).Y_sphere).epsilon(3e-7));
}

TEST_CASE("bubble energy equals the sphere constant (TypeII)") {
  const ParamPoint p(7, 1.5);
  ClosedFormSource W(p, 1.0);
  const double E = energy_bar(W);
  CHECK(E == doctest::Approx(constants(p).Y_sphere).epsilon(1e-6));
}

TEST_CASE("energy is scale invariant") {
  const ParamPoint p(3, 0.5);
  ClosedFormSource W1(p, 1.0);
  ClosedFormSource W2(p, 0.25);
  CHECK(energy_bar(W1) == doctest::Approx(energy_bar(W2)).epsilon(1e-8));
}

TEST_CASE("boundary pairing identity: kappa Q(W, W) equals the bubble mass") {
  const ParamPoint p(3, 0.5);
  ClosedFormSource W(p, 1.0);
  const double q = constants(p).kappa_gamma * Q_form(W, W, -1.0);
  CHECK(q == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-6));
}

TEST_CASE("Q form is symmetric and bilinear") {
  const ParamPoint p(3, 0.5);
  auto unit = bubble_source(p, 1.0);
  GluedSource A(unit, 0.05, 0.4);
  GluedSource B(unit, 0.1, 0.4);
  const double qab = Q_form(A, B, 8.0);
  const double qba = Q_form(B, A, 8.0);
  CHECK(qab == doctest::Approx(qba).epsilon(1e-10));
}

TEST_CASE("green tail of the glued numerator matches a Monte-Carlo check") {
  // integral of |grad G|^2 x^{m0} over 0.8 < |x| < 8, G = eps |x|^{2g-n}
  const ParamPoint p(3, 0.5);
  GluedSource U(bubble_source(p, 1.0), 0.05, 0.4);
  QuadratureSpec spec(Region::HalfBall, 8.0, p.m0());
  auto grad2 = [&](double r, double x) {
    if (r * r + x * x < 0.8 * 0.8) return 0.0;
    const ExtFields f = U.green_fields(r, x, kFieldGrad);
    return f.Wr * f.Wr + f.Wx * f.Wx;
  };
  const IntegralResult mc = mc_oracle(grad2, p.n(), spec, 2000000, 17);
  const double n = p.n(), tg = 2.0 * p.gamma();
  // A0 = |S^{n-1}| (1/2) B(n/2, (m0+1)/2); at (3, 1/2) this is pi^2
  const double A0 = 0.5 * sphere_area(p.n() - 1) * gamma_fn(1.5) * gamma_fn(0.5) /
                    gamma_fn(2.0);
  const double eps_pow = std::pow(0.05, n - tg);
  const double want = (n - tg) * A0 * eps_pow *
                      (std::pow(0.8, tg - n) - std::pow(8.0, tg - n));
  CHECK(std::fabs(mc.value - want) < 3.0 * mc.err_estimate);
}

TEST_CASE("glued self-action excess is positive and of the stated order") {
  const ParamPoint p(3, 0.5);
  const double delta = 0.5;
  const SelfActionResult a = glued_self_action(p, delta / 8, delta);
  const SelfActionResult b = glued_self_action(p, delta / 16, delta);
  CHECK(a.energy > constants(p).Y_sphere);
  CHECK(b.energy > constants(p).Y_sphere);
  CHECK(a.energy_excess_norm > 0.0);
  CHECK(b.energy_excess_norm > 0.0);
  // normalized excess stable within a factor of two across the dyadic step
  CHECK(std::fabs(a.energy_excess_norm) < 2.0 * std::fabs(b.energy_excess_norm));
  CHECK(std::fabs(b.energy_excess_norm) < 2.0 * std::fabs(a.energy_excess_norm));
  CHECK(a.gluing_jump < 1e-8);
  CHECK_THROWS_AS(glued_self_action(p, 0.3, 0.5), std::invalid_argument);
}
