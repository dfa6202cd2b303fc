#pragma once

#include <memory>

#include "fracyam/extension_source.hpp"
#include "fracyam/field_integrals.hpp"
#include "fracyam/params.hpp"
#include "fracyam/report.hpp"

namespace fracyam {

/// C^2 cutoff: 1 on |x| <= delta, 0 on |x| >= 2 delta, quintic smoothstep in
/// v = |x|^2.
struct Cutoff {
  double delta;
  explicit Cutoff(double d) : delta(d) {
    if (!(d > 0)) throw std::invalid_argument("Cutoff: delta <= 0");
  }
  double chi_v(double v) const;
  double dchi_v(double v) const;    // d chi / dv
  double d2chi_v(double v) const;   // d^2 chi / dv^2
  double chi(double rho) const { return chi_v(rho * rho); }
};

/// Glued test function around a boundary center (taken as the origin):
///   U = chi_delta W_eps + (1 - chi_delta) eps^{(n-2g)/2} |x|^{2g-n}.
class GluedSource : public ExtensionSource {
 public:
  GluedSource(std::shared_ptr<const ExtensionSource> W_unit, double eps, double delta,
              double C0 = 2.0);

  const ParamPoint& param() const override { return W_->param(); }
  ExtFields fields(double r, double x, unsigned mask) const override;
  double boundary(double r) const override;  // the glued trace v(r)
  BoundaryExpansion expansion(double r) const override;
  double coverage_radius() const override { return 1e9; }

  double eps() const { return eps_; }
  double delta() const { return delta_; }
  double scale() const override { return eps_; }
  const Cutoff& cutoff() const { return cut_; }

  /// -Delta_{m0} U; identically zero outside the gluing annulus.
  double minus_L_typeI(double r, double x) const;
  /// Green tail value eps^{(n-2g)/2} |x|^{2g-n} and W - tail, with derivatives.
  ExtFields green_fields(double r, double x, unsigned mask) const;

 private:
  std::shared_ptr<const ExtensionSource> W_;  // already at scale eps
  double eps_, delta_;
  Cutoff cut_;
  double green_coef_;  // eps^{(n-2g)/2}
};

/// Quadratic forms of the flat model over the half-ball of radius R
/// (R <= 0: half-space via dyadic-shell tail extrapolation).
double Q_form_typeI(const ExtensionSource& A, const ExtensionSource& B, double R,
                    int split = 1);
double Q_form_typeII(const ExtensionSource& A, const ExtensionSource& B, double R,
                     int split = 1);
double Q_form(const ExtensionSource& A, const ExtensionSource& B, double R = -1.0,
              int split = 1);

/// Boundary mass of a trace: |S^{n-1}| int f(r)^q r^{n-1} dr over [0, R] with
/// the exact power tail added when R < 0 (full boundary, f ~ r^{-(n-2g)}).
double boundary_mass(const ParamPoint& p, const std::function<double(double)>& trace,
                     double q, double R, double feature, int split = 1);

/// kappa Q(U,U) / mass^{(n-2g)/n} for a source with trace.
double energy_bar(const ExtensionSource& U, int split = 1);

struct SelfActionResult {
  double energy = 0.0;
  double mass = 0.0;
  double energy_excess_norm = 0.0;  // (E - Y) / (delta^{2g-n} eps^{n-2g})
  double mass_defect_norm = 0.0;    // (mass - Y^{n/2g}) / (eps^n delta^{-n})
  double gluing_jump = 0.0;         // relative trace mismatch at |x| = 1.5 delta
};

SelfActionResult glued_self_action(const ParamPoint& p, double eps, double delta,
                                   bool fast = false, int split = 1);

VerificationReport glued_self_action_sweep(const ParamPoint& p, double delta,
                                           const std::vector<double>& eps_list,
                                           bool fast = false);

}  // namespace fracyam
