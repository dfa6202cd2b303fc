#include <cmath>

#include "doctest.h"
#include "fracyam/gauss.hpp"
#include "fracyam/quadrature.hpp"

using namespace fracyam;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const GaussRule& gl = gauss_legendre(8);
  double s = 0.0;
  for (size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * std::pow(gl.x[i], 10);
  CHECK(s == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("gauss-jacobi handles the boundary weight") {
  // int_0^1 x^{-1/2} dx = 2, int_0^1 x^{-1/2} x^3 dx = 2/7
  GaussRule r = jacobi_on_interval(8, -0.5, 1.0);
  double s0 = 0.0, s3 = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) {
    s0 += r.w[i];
    s3 += r.w[i] * std::pow(r.x[i], 3);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s3 == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("fornberg weights reproduce derivatives") {
  // f(x) = sin x at 0.3 on a nonuniform stencil
  std::vector<double> nodes = {0.1, 0.22, 0.3, 0.41, 0.55};
  const auto w1 = fd_weights(0.3, nodes, 1);
  const auto w2 = fd_weights(0.3, nodes, 2);
  double d1 = 0.0, d2 = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    d1 += w1[i] * std::sin(nodes[i]);
    d2 += w2[i] * std::sin(nodes[i]);
  }
  CHECK(d1 == doctest::Approx(std::cos(0.3)).epsilon(1e-5));
  CHECK(d2 == doctest::Approx(-std::sin(0.3)).epsilon(1e-3));
}

TEST_CASE("half-ball volumes n = 2") {
  QuadratureSpec spec(Region::HalfBall, 1.0, 0.0);
  const IntegralResult res =
      integrate_radial([](double, double) { return 1.0; }, 2, spec);
  CHECK(res.converged);
  // half the volume of the unit 3-ball
  CHECK(res.value == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-9));

  QuadratureSpec spec1(Region::HalfBall, 1.0, 1.0);
  const IntegralResult res1 =
      integrate_radial([](double, double) { return 1.0; }, 2, spec1);
  // int_{B+} x_N dx = pi/4 (closed form by spherical coordinates)
  CHECK(res1.value == doctest::Approx(M_PI / 4.0).epsilon(1e-9));
}

TEST_CASE("spec validation") {
  QuadratureSpec bad;
  bad.weight_exp = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  QuadratureSpec div(Region::HalfBall, 2.0, 0.0);
  div.divergence_declared = true;
  CHECK_NOTHROW(div.validate());
  div.region = Region::HalfSpace;
  CHECK_THROWS_AS(div.validate(), std::invalid_argument);
}

TEST_CASE("smooth integrand converges over the half-space") {
  QuadratureSpec spec(Region::HalfSpace, 0.0, 0.0);
  spec.rel_tol = 1e-9;
  const IntegralResult res = integrate_radial(
      [](double r, double x) { return std::exp(-r * r - x * x); }, 2, spec);
  // int over R^3_+ of exp(-|x|^2) = pi^{3/2}/2
  CHECK(res.value == doctest::Approx(0.5 * std::pow(M_PI, 1.5)).epsilon(1e-8));
}

TEST_CASE("monte carlo oracle agrees and is reproducible") {
  QuadratureSpec spec(Region::HalfBall, 1.0, 0.0);
  auto one = [](double, double) { return 1.0; };
  const IntegralResult a = mc_oracle(one, 2, spec, 200000, 7);
  const IntegralResult b = mc_oracle(one, 2, spec, 200000, 7);
  CHECK(a.value == b.value);  // bit-identical per seed
  CHECK(std::fabs(a.value - 2.0 * M_PI / 3.0) < 3.0 * (a.err_estimate + 1e-9));

  QuadratureSpec spec1(Region::HalfBall, 1.0, 1.0);
  const IntegralResult c = mc_oracle(one, 2, spec1, 200000, 11);
  CHECK(std::fabs(c.value - M_PI / 4.0) < 3.0 * (c.err_estimate + 1e-9));
}

TEST_CASE("monte carlo cross-checks a weighted bubble integral") {
  // int x^{0.6} exp(-r^2 - x) over half-ball radius 2, n = 3
  QuadratureSpec spec(Region::HalfBall, 2.0, 0.6);
  spec.rel_tol = 1e-9;
  auto f = [](double r, double x) { return std::exp(-r * r - x); };
  const IntegralResult det = integrate_radial(f, 3, spec);
  const IntegralResult mc = mc_oracle(f, 3, spec, 400000, 42);
  CHECK(std::fabs(det.value - mc.value) < 3.0 * mc.err_estimate);
}
