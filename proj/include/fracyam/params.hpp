#pragma once

#include <stdexcept>

namespace fracyam {

enum class Regime { TypeI, TypeII };

/// Validated (n, gamma) pair. gamma in (0,1) or (1,2), 0 < gamma < n/2,
/// with a configurable exclusion margin around gamma = 1 where the
/// kappa_gamma formulas switch branch.
class ParamPoint {
 public:
  ParamPoint(int n, double gamma, double gamma_one_margin = 1e-3);

  int n() const { return n_; }
  double gamma() const { return gamma_; }
  double m0() const { return 1.0 - 2.0 * gamma_; }
  double m1() const { return 3.0 - 2.0 * gamma_; }
  Regime regime() const { return gamma_ < 1.0 ? Regime::TypeI : Regime::TypeII; }

  /// Boundary critical exponent 2n/(n-2gamma).
  double crit_exp() const { return 2.0 * n_ / (n_ - 2.0 * gamma_); }
  /// Trace nonlinearity exponent (n+2gamma)/(n-2gamma).
  double trace_exp() const { return (n_ + 2.0 * gamma_) / (n_ - 2.0 * gamma_); }

  bool operator==(const ParamPoint& o) const {
    return n_ == o.n_ && gamma_ == o.gamma_;
  }

 private:
  int n_;
  double gamma_;
};

}  // namespace fracyam
