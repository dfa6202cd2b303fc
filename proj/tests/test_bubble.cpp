#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fracyam/bubble.hpp"
#include "fracyam/constants.hpp"
#include "fracyam/extension_source.hpp"

using namespace fracyam;

TEST_CASE("bubble boundary values and monotonicity") {
  const ParamPoint p(5, 0.7);
  const ConstantSet& c = constants(p);
  const double e = 0.5 * (p.n() - 2.0 * p.gamma());
  CHECK(w_eval(p, 0.5, 0.0) ==
        doctest::Approx(c.alpha_n_gamma * std::pow(0.5, -e)).epsilon(1e-13));
  CHECK(w_eval(p, 1.0, 0.5) > w_eval(p, 1.0, 1.0));
  CHECK(w_eval(p, 1.0, 1.0) > w_eval(p, 1.0, 2.0));
  // scaling: w_eps(eps x) = eps^{-e} w_1(x)
  CHECK(w_eval(p, 0.3, 0.3 * 2.0) ==
        doctest::Approx(std::pow(0.3, -e) * w_eval(p, 1.0, 2.0)).epsilon(1e-13));
  CHECK_THROWS_AS(BubbleParams(p, -1.0), std::invalid_argument);
}

TEST_CASE("closed-form (7,3/2) derivatives match finite differences") {
  const double h = 1e-5;
  for (auto [r, x] : std::vector<std::pair<double, double>>{{0.7, 0.4}, {2.0, 1.3}}) {
    const Deriv32 d = W_derivatives_32(1.0, r, x);
    const double fd_r =
        (W_closed_form(1.0, r + h, x) - W_closed_form(1.0, r - h, x)) / (2 * h);
    const double fd_x =
        (W_closed_form(1.0, r, x + h) - W_closed_form(1.0, r, x - h)) / (2 * h);
    const double fd_rr = (W_closed_form(1.0, r + h, x) - 2.0 * W_closed_form(1.0, r, x) +
                          W_closed_form(1.0, r - h, x)) /
                         (h * h);
    CHECK(d.dr == doctest::Approx(fd_r).epsilon(1e-6));
    CHECK(d.dN == doctest::Approx(fd_x).epsilon(1e-6));
    CHECK(d.drr_minus == doctest::Approx(fd_rr - fd_r / r).epsilon(1e-4));
  }
  CHECK(W_derivatives_32(1.0, 0.0, 0.7).dr == 0.0);
}

TEST_CASE("closed-form field sets match finite differences") {
  for (auto [r, x] : std::vector<std::pair<double, double>>{{0.8, 0.6}, {1.7, 0.2}}) {
    for (int which = 0; which < 2; ++which) {
      auto F = [&](double rr, double xx) {
        return which == 0 ? cf_fields_3_05(1.0, rr, xx, kFieldW).W
                          : cf_fields_7_15(1.0, rr, xx, kFieldW).W;
      };
      const ExtFields f = which == 0 ? cf_fields_3_05(1.0, r, x, kFieldAll)
                                     : cf_fields_7_15(1.0, r, x, kFieldAll);
      const double h = 1e-5;
      CHECK(f.Wr == doctest::Approx((F(r + h, x) - F(r - h, x)) / (2 * h)).epsilon(1e-6));
      CHECK(f.Wx == doctest::Approx((F(r, x + h) - F(r, x - h)) / (2 * h)).epsilon(1e-6));
      CHECK(f.Wrr ==
            doctest::Approx((F(r + h, x) - 2 * F(r, x) + F(r - h, x)) / (h * h))
                .epsilon(1e-4));
      CHECK(f.Wxx ==
            doctest::Approx((F(r, x + h) - 2 * F(r, x) + F(r, x - h)) / (h * h))
                .epsilon(1e-4));
      const double fd_rx = (F(r + h, x + h) - F(r + h, x - h) - F(r - h, x + h) +
                            F(r - h, x - h)) /
                           (4 * h * h);
      CHECK(f.Wrx == doctest::Approx(fd_rx).epsilon(1e-4));
      // third derivative d/dx of Wrr
      auto Frr = [&](double xx) {
        return which == 0 ? cf_fields_3_05(1.0, r, xx, kFieldSecond).Wrr
                          : cf_fields_7_15(1.0, r, xx, kFieldSecond).Wrr;
      };
      CHECK(f.Wrrx ==
            doctest::Approx((Frr(x + h) - Frr(x - h)) / (2 * h)).epsilon(1e-4));
    }
  }
}

TEST_CASE("closed-form scaling covariance") {
  // W_eps(eps xbar, eps x_N) = eps^{-(n-2g)/2} W_1(xbar, x_N), (7,3/2): e = 2
  const double r = 1.3, x = 0.6;
  CHECK(W_closed_form(2.0, 2.0 * r, 2.0 * x) ==
        doctest::Approx(std::pow(2.0, -2.0) * W_closed_form(1.0, r, x)).epsilon(1e-13));
}

TEST_CASE("theta kernel closed form matches brute force") {
  // n = 3 closed form and n = 5 panel route vs naive Simpson
  for (auto [n, P, q2, rs] : std::vector<std::tuple<int, double, double, double>>{
           {3, 2.0, 0.09, 1.0}, {3, 3.2, 2.0, 0.3}, {5, 3.75, 0.04, 2.0}}) {
    const int N = 200000;
    double simpson = 0.0;
    for (int i = 0; i <= N; ++i) {
      const double th = M_PI * i / N;
      const double w = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      simpson += w * std::pow(std::sin(th), n - 2) *
                 std::pow(q2 + 2.0 * rs * (1.0 - std::cos(th)), -P);
    }
    simpson *= M_PI / N / 3.0;
    CHECK(kernel_theta_integral(n, P, q2, rs) ==
          doctest::Approx(simpson).epsilon(1e-8));
  }
}

TEST_CASE("poisson extension of the bubble matches the closed forms") {
  const ParamPoint p7(7, 1.5);
  const RadialData d7 = bubble_boundary_data(p7, 1.0);
  CHECK(extend(p7, d7, 1.0, 0.0) ==
        doctest::Approx(W_closed_form(1.0, 0.0, 1.0)).epsilon(1e-7));
  CHECK(extend(p7, d7, 1.0, 1.0) ==
        doctest::Approx(W_closed_form(1.0, 1.0, 1.0)).epsilon(1e-6));

  const ParamPoint p3(3, 0.5);
  const RadialData d3 = bubble_boundary_data(p3, 1.0);
  CHECK(extend(p3, d3, 0.5, 0.5) ==
        doctest::Approx(cf_fields_3_05(1.0, 0.5, 0.5, kFieldW).W).epsilon(1e-9));
  // boundary row returns the trace itself
  CHECK(extend(p3, d3, 0.0, 2.0) == w_eval(p3, 1.0, 2.0));
}

TEST_CASE("extend rejects slowly decaying data") {
  const ParamPoint p(3, 0.5);
  RadialData bad;
  bad.f = [](double s) { return 1.0 / (1.0 + s); };
  bad.tail_exp = 1.0;  // slower than n - 2 gamma = 2
  CHECK_THROWS_AS(extend(p, bad, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("radial profile validation and CSV schema") {
  const ParamPoint p(3, 0.5);
  RadialProfile prof(p, {0.0, 1.0, 2.0}, {0.0, 0.5});
  prof.at(1, 1) = 3.25;
  std::ostringstream os;
  prof.write_csv(os);
  CHECK(os.str().rfind("r,xN,value\n", 0) == 0);
  CHECK_THROWS_AS(RadialProfile(p, {1.0, 0.5}, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("decay envelopes hold for the (7,3/2) bubble") {
  const ParamPoint p(7, 1.5);
  auto fields = [](double r, double x, unsigned mask) {
    return cf_fields_7_15(1.0, r, x, mask);
  };
  const VerificationReport rep = decay_check(p, fields, decay_samples());
  CHECK(rep.status == CheckStatus::pass);
}

TEST_CASE("scaled source wraps the unit source consistently") {
  const ParamPoint p(3, 0.5);
  auto unit = bubble_source(p, 1.0);
  ScaledSource s(unit, 0.25);
  const ExtFields a = s.fields(0.3, 0.2, kFieldAll);
  const ExtFields b = cf_fields_3_05(0.25, 0.3, 0.2, kFieldAll);
  CHECK(a.W == doctest::Approx(b.W).epsilon(1e-12));
  CHECK(a.Wr == doctest::Approx(b.Wr).epsilon(1e-12));
  CHECK(a.Wxx == doctest::Approx(b.Wxx).epsilon(1e-12));
}
