#include <cmath>

#include "doctest.h"
#include "fracyam/constants.hpp"
#include "fracyam/interaction.hpp"

using namespace fracyam;

TEST_CASE("eps_ij closed form") {
  const ParamPoint p(3, 0.5);
  // coinciding bubbles: 2^{(2g-n)/2} = 2^{-1}
  CHECK(eps_ij(BubblePair(p, 0.1, 0.1, 0.0, 0.5)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  // symmetry and monotone decrease in distance
  const double a = eps_ij(BubblePair(p, 0.02, 0.05, 0.3, 0.5));
  const double b = eps_ij(BubblePair(p, 0.05, 0.02, 0.3, 0.5));
  CHECK(a == doctest::Approx(b).epsilon(1e-15));
  CHECK(eps_ij(BubblePair(p, 0.02, 0.05, 0.6, 0.5)) < a);
  CHECK_THROWS_AS(BubblePair(p, 0.3, 0.3, 0.1, 0.5), std::invalid_argument);
}

TEST_CASE("two-center reduction against a gaussian convolution oracle") {
  const ParamPoint p(3, 0.5);
  const double d = 0.8;
  auto F = [&](double u, double rho_j) {
    return std::exp(-u * u - rho_j * rho_j);
  };
  const double got = boundary_two_center(p, F, d, {0.5, 1.0}, 12.0, 0.3);
  const double want = std::exp(-0.5 * d * d) * std::pow(0.5 * M_PI, 1.5);
  CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("triple box integral against a gaussian oracle") {
  std::array<std::array<double, 3>, 3> ctr = {std::array<double, 3>{0.4, 0.0, 0.0},
                                              std::array<double, 3>{-0.2, 0.3, 0.0},
                                              std::array<double, 3>{0.0, -0.5, 0.0}};
  auto g = [](double r) { return std::exp(-r * r); };
  double sum2 = 0.0, norm2 = 0.0;
  for (const auto& c : ctr) {
    for (int k = 0; k < 3; ++k) sum2 += 0.0;
  }
  // phi = sum |c_i|^2 - |sum c_i|^2 / 3
  double cx = 0, cy = 0, cz = 0, s2 = 0;
  for (const auto& c : ctr) {
    cx += c[0];
    cy += c[1];
    cz += c[2];
    s2 += c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
  }
  const double phi = s2 - (cx * cx + cy * cy + cz * cz) / 3.0;
  const double want = std::exp(-phi) * std::pow(M_PI / 3.0, 1.5);
  const double got = triple_boundary_integral(g, g, g, ctr, 8.0, 0.05, 1e-5);
  CHECK(got == doctest::Approx(want).epsilon(1e-4));
  (void)sum2;
  (void)norm2;
}

TEST_CASE("pair interactions: swap asymmetry and e_ij consistency") {
  const ParamPoint p(3, 0.5);
  const double delta = 0.5, d = 0.25, eps = delta / 16;
  BubblePair pair(p, eps, eps, d, delta);
  const double ep = epsilon_ij(pair, true);
  const double sep = eps_ij(pair);
  CHECK(ep > 0.0);
  CHECK(sep > 0.0);
  // e_ij within a generous O(delta) band of epsilon_ij
  const double e = e_ij_flat(pair, true);
  CHECK(e / ep > 1.0 - 3.0 * delta);
  CHECK(e / ep < 1.0 + 3.0 * delta);
}

TEST_CASE("self-energy by parts equals the direct gradient quadrature") {
  const ParamPoint p(3, 0.5);
  const double eps = 0.05, delta = 0.4;
  const double by_parts = e_self_flat(p, eps, delta);
  GluedSource U(bubble_source(p, 1.0), eps, delta);
  const double direct = constants(p).kappa_gamma * Q_form(U, U, -1.0);
  CHECK(by_parts == doctest::Approx(direct).epsilon(1e-5));
}

TEST_CASE("landscape reduces to the self-action at p = 1") {
  const ParamPoint p(3, 0.5);
  const double delta = 0.15, eps = delta / 8;
  BubbleConfig cfg = circle_config(p, 1, 0.0, eps, delta);
  const double E1 = barycenter_landscape(cfg, true);
  GluedSource U(bubble_source(p, 1.0), eps, delta);
  const double Ebar = energy_bar(U);
  CHECK(E1 == doctest::Approx(Ebar).epsilon(1e-4));
}

TEST_CASE("landscape rejects unsupported exponents and bad weights") {
  BubbleConfig cfg = circle_config(ParamPoint(4, 0.75), 2, 0.5, 0.01, 0.15);
  CHECK_THROWS_AS(barycenter_landscape(cfg, true), std::invalid_argument);
  BubbleConfig neg = circle_config(ParamPoint(3, 0.5), 2, 0.5, 0.01, 0.15);
  neg.weights[0] = -1.0;
  CHECK_THROWS_AS(barycenter_landscape(neg, true), std::invalid_argument);
}

TEST_CASE("higher-exponent slope at (3, 1/2)") {
  const ParamPoint p(3, 0.5);
  const double delta = 0.5;
  const HigherExponentResult res = higher_exponent_check(
      p, 2.5, 0.5, 0.25, delta, {delta / 8, delta / 16, delta / 32}, true);
  CHECK(res.slope == doctest::Approx(0.5).epsilon(0.1));
  CHECK_THROWS_AS(higher_exponent_check(p, 2.9, 0.2 /* wrong sum */, 0.25, delta,
                                        {delta / 8}, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(higher_exponent_check(p, 3.0, 0.0, 0.25, delta, {delta / 8}, true),
                  std::invalid_argument);
}
