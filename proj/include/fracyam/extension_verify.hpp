#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fracyam/bubble.hpp"
#include "fracyam/extension_source.hpp"
#include "fracyam/params.hpp"
#include "fracyam/report.hpp"

namespace fracyam {

/// Weighted Neumann-limit extraction along the boundary.
struct TraceResult {
  std::vector<double> r_grid;
  std::vector<double> extracted_trace;
  std::vector<double> reference;  // w^{(n+2g)/(n-2g)}
  double fit_exponent = 0.0;      // exponent used in the layer template
  double fit_residual = 0.0;      // max relative fit residual
  double max_rel_dev = 0.0;       // max |extracted/reference - 1|
  double first_limit = 0.0;       // TypeII: sup |x^{m1} dW/dx| extrapolated
  bool pass = false;
};

/// Max relative residual of Delta_{m0} W over the interior of the profile
/// (4th-order stencils; the weighted first-order term exact at nodes).
double residual_second_order_max(const ParamPoint& p, const RadialProfile& prof);
VerificationReport residual_second_order(const ParamPoint& p, const RadialProfile& prof,
                                         double threshold);

/// Pointwise relative discrepancy of Delta_{m1} W = 2 x^{-1} dW/dx (TypeII).
double identity_DW_max(const ParamPoint& p, const RadialProfile& prof);
VerificationReport identity_DW(const ParamPoint& p, const RadialProfile& prof,
                               double threshold);

/// Residual of Delta_{m1}^2 W = 0, applied as two nested stencil passes.
double biharmonic_residual_max(const ParamPoint& p, const RadialProfile& prof);

/// Neumann trace extraction from a pointwise evaluator W(r, x) at the given
/// radii, using the expansion template with Richardson over the fit window.
TraceResult neumann_trace(const ParamPoint& p,
                          const std::function<double(double, double)>& W,
                          const std::function<double(double)>& boundary,
                          const std::vector<double>& radii, double x_base = 0.0);

enum class GrowthRegime { bounded, logarithmic, power };

struct NormGrowthResult {
  std::vector<double> radii;
  std::vector<double> values;
  GrowthRegime observed = GrowthRegime::bounded;
  GrowthRegime predicted = GrowthRegime::bounded;
  double observed_exponent = 0.0;   // log2 of consecutive-difference ratio
  double predicted_exponent = 0.0;  // 2g+2+k-n (TypeI) or 2g+4+k-n (TypeII)
  bool pass = false;
};

/// Growth classification of the weighted bubble norms over B+(0, delta) with
/// eps = 1 and growing delta (the ratios delta/eps of the statement).
NormGrowthResult norm_growth(const ParamPoint& p, int k,
                             const std::vector<double>& ratios, bool fast = false);
VerificationReport norm_growth_report(const ParamPoint& p, int k,
                                      const std::vector<double>& ratios,
                                      bool fast = false);

}  // namespace fracyam
