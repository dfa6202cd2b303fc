#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "fracyam/energy.hpp"
#include "fracyam/params.hpp"
#include "fracyam/report.hpp"

namespace fracyam {

struct BubblePair {
  ParamPoint p;
  double eps_i, eps_j;
  double d;  // boundary distance between the centers
  double delta;
  double C0 = 2.0;

  BubblePair(ParamPoint pp, double ei, double ej, double dist, double del)
      : p(pp), eps_i(ei), eps_j(ej), d(dist), delta(del) {
    if (!(eps_i > 0 && eps_j > 0 && d >= 0 && delta > 0))
      throw std::invalid_argument("BubblePair: bad parameters");
    if (!(C0 * std::max(eps_i, eps_j) <= delta))
      throw std::invalid_argument("BubblePair: need C0 max(eps) <= delta");
  }
};

/// Closed-form separation measure; lies in (0, 2^{(2g-n)/2}].
double eps_ij(const BubblePair& pair);

/// Generic axially-reduced two-center boundary integral:
///   int_{R^n} F(u, rho_j) dy,  u = |y - a_i|, rho_j = |y - a_j|.
double boundary_two_center(const ParamPoint& p,
                           const std::function<double(double, double)>& F, double d,
                           const std::vector<double>& u_breaks, double u_max,
                           double peak_scale_j);

/// Boundary pairing  oint v_i^{(n+2g)/(n-2g)} v_j  of the glued traces.
double epsilon_ij(const BubblePair& pair, bool fast = false);

/// kappa_gamma Q(U_i, U_j) in the flat model (TypeI), computed by the
/// integration-by-parts route: boundary pairing + annulus bulk term.
double e_ij_flat(const BubblePair& pair, bool fast = false);

/// Glued self-energy kappa Q(U,U) by the same route (one center).
double e_self_flat(const ParamPoint& p, double eps, double delta, bool fast = false);

/// Bulk cross-term  int chi_i W_i U_j x^m dmu  over B+(0, 2 delta) around i.
double bulk_cross_term(const BubblePair& pair, bool fast = false);

/// Boundary remainder  oint |v_i^{(n+2g)/(n-2g)} - chi_i w_i^{...}| v_j.
double boundary_remainder(const BubblePair& pair, bool fast = false);

struct HigherExponentResult {
  double slope = 0.0;        // log-log slope of the pairing vs eps_ij
  double beta = 0.0;         // expected slope (item i)
  bool log_factor = false;   // item ii: detected log correction
  std::vector<double> values, separations;
  bool pass = false;
};

HigherExponentResult higher_exponent_check(const ParamPoint& p, double alpha,
                                           double beta, double d, double delta,
                                           const std::vector<double>& eps_list,
                                           bool fast = false);

struct BubbleConfig {
  ParamPoint p;
  std::vector<std::array<double, 2>> centers;  // coordinates in a boundary plane
  std::vector<double> weights;
  double eps;
  double delta;
};

/// Equally spaced centers on a circle of the given radius.
BubbleConfig circle_config(const ParamPoint& p, int count, double circle_radius,
                           double eps, double delta);

/// Energy of sum alpha_i v_i in the flat model. Requires a boundary critical
/// exponent of 3 (integer expansion of the mass), i.e. n = 6 gamma.
double barycenter_landscape(const BubbleConfig& config, bool fast = false);

struct LandscapeFit {
  double C6 = 0.0, C7 = 0.0;
  int p_star = 0;
  double fit_residual = 0.0;
  std::vector<double> energies;  // row-major over (p, eps)
};

LandscapeFit p_star_estimate(const ParamPoint& p, double circle_radius, double delta,
                             const std::vector<double>& eps_list,
                             const std::vector<int>& p_list, bool fast = false);

/// Adaptive box quadrature of  v1 v2 v3  over R^3 (boundary dimension 3).
double triple_boundary_integral(const std::function<double(double)>& v1,
                                const std::function<double(double)>& v2,
                                const std::function<double(double)>& v3,
                                const std::array<std::array<double, 3>, 3>& centers,
                                double box_half, double peak_scale, double rel_tol);

}  // namespace fracyam
