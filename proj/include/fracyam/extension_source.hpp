#pragma once

#include <array>
#include <memory>
#include <vector>

#include "fracyam/bubble.hpp"
#include "fracyam/params.hpp"

namespace fracyam {

/// Small-x_N expansion of an extension at fixed r:
///   W = f + sum_j psi[j] x^{a[j]},  valid for x <= cap.
/// TypeI exponents {2g, 2, 2+2g, 4}; TypeII {2, 2g, 4, 2+2g}.
struct BoundaryExpansion {
  double cap = 0.0;
  double f = 0.0, fr = 0.0, frr = 0.0;
  std::array<double, 4> a{}, psi{}, psi_r{}, psi_rr{};
};

/// Field source for one extension profile (unit scale unless stated).
class ExtensionSource {
 public:
  virtual ~ExtensionSource() = default;
  virtual const ParamPoint& param() const = 0;
  virtual ExtFields fields(double r, double x, unsigned mask) const = 0;
  virtual double boundary(double r) const = 0;
  virtual BoundaryExpansion expansion(double r) const = 0;
  virtual double coverage_radius() const = 0;
  /// intrinsic length scale (bubble eps); integration geometry follows it
  virtual double scale() const { return 1.0; }
};

/// Exponent ladder used by expansions and trace fits.
std::array<double, 4> expansion_exponents(const ParamPoint& p);

/// Closed-form backed source ((3,1/2) and (7,3/2)), any eps.
class ClosedFormSource : public ExtensionSource {
 public:
  ClosedFormSource(ParamPoint p, double eps);
  const ParamPoint& param() const override { return p_; }
  ExtFields fields(double r, double x, unsigned mask) const override;
  double boundary(double r) const override;
  BoundaryExpansion expansion(double r) const override;
  double coverage_radius() const override { return 1e9; }
  double scale() const override { return eps_; }

 private:
  ParamPoint p_;
  double eps_;
};

/// Quadrature-built table of the unit bubble extension W_1 on a log-log grid,
/// with 8th-order log-space derivative tables and per-column boundary-layer
/// fits. fields() dispatches between the table (x above the boundary layer)
/// and the fitted expansion (x inside it), blending in between.
class BubbleTableSource : public ExtensionSource {
 public:
  struct Options {
    double r_min = 5e-4;
    double r_max = 2.5e2;
    double h = 0.08;          // log step, both directions
    double cap_frac = 0.04;   // boundary layer thickness / sqrt(1 + r^2)
    int gl_s = 14;            // nodes per panel in the Poisson s-integral
    unsigned max_mask = kFieldAll;
  };

  explicit BubbleTableSource(ParamPoint p);
  BubbleTableSource(ParamPoint p, Options opt);

  const ParamPoint& param() const override { return p_; }
  ExtFields fields(double r, double x, unsigned mask) const override;
  double boundary(double r) const override;
  BoundaryExpansion expansion(double r) const override;
  double coverage_radius() const override { return opt_.r_max; }

 private:
  double cap(double r) const;
  ExtFields table_fields(double r, double x, unsigned mask) const;
  ExtFields expansion_fields(const BoundaryExpansion& e, double r, double x,
                             unsigned mask) const;

  ParamPoint p_;
  Options opt_;
  std::array<double, 4> expo_;
  int nt_ = 0, nu_ = 0;
  double t0_ = 0, u0_ = 0;
  // tables indexed [it * nu + iu]; derivative tables live in log space
  std::vector<double> W_, Wt_, Wu_, Wtt_, Wtu_, Wuu_, Wttu_;
  std::vector<int> fill_from_;  // first filled u-row per column
  // boundary-layer fit coefficients per t-column, plus t-derivatives
  std::array<std::vector<double>, 4> psi_, psi_t_, psi_tt_;
};

/// Rescale a unit source to scale eps: W_eps(r,x) = eps^{-(n-2g)/2} W_1(r/eps, x/eps).
class ScaledSource : public ExtensionSource {
 public:
  ScaledSource(std::shared_ptr<const ExtensionSource> base, double eps);
  const ParamPoint& param() const override { return base_->param(); }
  ExtFields fields(double r, double x, unsigned mask) const override;
  double boundary(double r) const override;
  BoundaryExpansion expansion(double r) const override;
  double coverage_radius() const override {
    return base_->coverage_radius() * eps_;
  }
  double scale() const override { return base_->scale() * eps_; }

 private:
  std::shared_ptr<const ExtensionSource> base_;
  double eps_;
};

/// Source factory: closed form where available, table otherwise. Tables are
/// cached per ParamPoint (unit scale).
std::shared_ptr<const ExtensionSource> bubble_source(const ParamPoint& p, double eps = 1.0,
                                                     bool fast = false);

}  // namespace fracyam
