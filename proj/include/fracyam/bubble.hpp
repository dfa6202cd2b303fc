#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracyam/params.hpp"
#include "fracyam/report.hpp"

namespace fracyam {

struct BubbleParams {
  ParamPoint p;
  double eps;
  std::vector<double> sigma;  // center on the boundary

  BubbleParams(ParamPoint pp, double e, std::vector<double> s = {})
      : p(pp), eps(e), sigma(std::move(s)) {
    if (!(eps > 0.0)) throw std::invalid_argument("BubbleParams: eps <= 0");
  }
};

/// w_{eps,sigma}(xbar) for |xbar - sigma| = dist.
double w_eval(const ParamPoint& p, double eps, double dist);
double w_eval(const BubbleParams& b, const std::vector<double>& xbar);

/// Extension field values at one half-space point (derivatives with respect
/// to r = |xbar| and x = x_N; Wrrx is d^3 W / dr dr dx).
struct ExtFields {
  double W = 0, Wr = 0, Wx = 0, Wrr = 0, Wrx = 0, Wxx = 0, Wrrx = 0;
};

enum FieldMask : unsigned {
  kFieldW = 1u,
  kFieldGrad = 2u,
  kFieldSecond = 4u,
  kFieldThird = 8u,
  kFieldAll = 15u,
};

/// Closed-form bubble extensions. (3, 1/2): W = alpha eps / ((eps+x)^2 + r^2)
/// with alpha = 2 (harmonic in R^4). (7, 3/2): the explicit quartic-decay form.
ExtFields cf_fields_3_05(double eps, double r, double x, unsigned mask = kFieldAll);
ExtFields cf_fields_7_15(double eps, double r, double x, unsigned mask = kFieldAll);
bool has_closed_form(const ParamPoint& p);
ExtFields cf_fields(const ParamPoint& p, double eps, double r, double x,
                    unsigned mask = kFieldAll);

/// (7, 3/2) bubble and its printed derivative combinations.
double W_closed_form(double eps, double r, double xN);
struct Deriv32 {
  double dr, dN, drr_minus;  // dW/dr, dW/dx_N, d2W/dr2 - (1/r) dW/dr
};
Deriv32 W_derivatives_32(double eps, double r, double xN);

/// Radial boundary data handed to the Poisson extension: values plus a
/// declared power-law tail f(s) ~ tail_coef(s) for s beyond tail_from.
struct RadialData {
  std::function<double(double)> f;
  double tail_exp = 0.0;       // f ~ C s^{-tail_exp}; 0 disables tail handling
  double feature_scale = 1.0;  // scale of f's variation near 0
};

RadialData bubble_boundary_data(const ParamPoint& p, double eps);

/// Poisson-kernel extension of radial boundary data, evaluated pointwise.
/// xN = 0 returns f(r). Precondition: tail_exp >= n - 2 gamma when integrating
/// over the full boundary (checked).
double extend(const ParamPoint& p, const RadialData& data, double xN, double r);

/// theta-integral of the reduced kernel; exposed for tests.
/// int_0^pi sin^{n-2}t (q2 + 2 rs (1-cos t))^{-P} dt
double kernel_theta_integral(int n, double P, double q2, double rs);

/// Samples of a radial profile on the half-plane; boundary row x = 0 included
/// when built from closed forms or extensions.
struct RadialProfile {
  ParamPoint p;
  std::vector<double> r_grid;
  std::vector<double> xN_grid;
  std::vector<double> values;  // row-major: values[ir * xN_grid.size() + ix]

  RadialProfile(ParamPoint pp, std::vector<double> rg, std::vector<double> xg);
  double& at(std::size_t ir, std::size_t ix) { return values[ir * xN_grid.size() + ix]; }
  double at(std::size_t ir, std::size_t ix) const {
    return values[ir * xN_grid.size() + ix];
  }
  void write_csv(std::ostream& os) const;
};

std::vector<double> log_grid(double lo, double hi, int count);

/// Build a profile by sampling W(r, xN).
RadialProfile build_profile(const ParamPoint& p,
                            const std::function<double(double, double)>& W,
                            const std::vector<double>& r_grid,
                            const std::vector<double>& xN_grid);

/// Lemma-level decay verification: the five envelope bounds, ratios compared
/// across the dyadic shells |x| in [1,2] and [8,16].
VerificationReport decay_check(
    const ParamPoint& p,
    const std::function<ExtFields(double, double, unsigned)>& fields,
    const std::vector<std::pair<double, double>>& samples);

/// Default sample cloud for decay_check (deterministic).
std::vector<std::pair<double, double>> decay_samples();

}  // namespace fracyam
