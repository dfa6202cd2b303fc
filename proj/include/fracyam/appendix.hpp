#pragma once

#include <array>
#include <vector>

#include "fracyam/params.hpp"
#include "fracyam/report.hpp"

namespace fracyam {

/// The weighted half-space integrals entering the fourth-order energy
/// expansion. All require gamma in (1,2) and n > 2 gamma + 4.
struct AppendixIntegrals {
  double A1, A2, A3;
  double F1, F5, F6;
  double F2mF3;  // int x^{5-2g} (dW/dx)^2
  double F3;     // int x^{5-2g} (dW/dr)^2
  double F7;     // int x^{5-2g} r Wrr Wr
  double F9;     // int x^{4-2g} r^2 Wr Wrx
};

AppendixIntegrals compute_A_integrals(const ParamPoint& p, bool fast = false,
                                      int split = 1);

/// Relative residuals of the three integration-by-parts identities.
std::array<double, 3> A_identity_residuals(const AppendixIntegrals& v,
                                           const ParamPoint& p);

double C4_from(const AppendixIntegrals& v, const ParamPoint& p);
double C4_quadrature(const ParamPoint& p, bool fast = false);

/// Rational-route coefficients (common positive factor stripped).
double I1_rational(double n, double gamma);
double I2_rational(double n, double gamma);
bool rational_admissible(double n, double gamma);

struct C4ScanResult {
  int grid_points = 0;
  double min_rational_sum = 0.0;
  std::vector<double> c4_spots;        // quadrature values at spot points
  std::vector<double> a3b2_estimates;  // I1_quad/I1r and I2_quad/I2r per spot
  bool pass = false;
};

C4ScanResult C4_sign_scan(double n_lo, double n_hi, int n_steps, int g_steps,
                          const std::vector<ParamPoint>& quad_spots,
                          bool fast = false);

struct LogIntegralFit {
  std::array<double, 5> slopes;
  std::array<double, 5> references;
  std::array<double, 5> rel_dev;
  double worst_rel = 0.0;
  bool pass = false;
};

/// Lemma-level logarithmic coefficients at (7, 3/2): the five integrals over
/// B+(0, T) fitted as c log T + b over the given dyadic ratios.
LogIntegralFit log_integrals_72(const std::vector<double>& ratios, int split = 2);

}  // namespace fracyam
