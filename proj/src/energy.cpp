#include "fracyam/energy.hpp"

#include <algorithm>
#include <cmath>

#include "fracyam/constants.hpp"
#include "fracyam/gamma.hpp"
#include "fracyam/gauss.hpp"

namespace fracyam {

double Cutoff::chi_v(double v) const {
  const double t = (v - delta * delta) / (3.0 * delta * delta);
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

double Cutoff::dchi_v(double v) const {
  const double t = (v - delta * delta) / (3.0 * delta * delta);
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return -30.0 * t * t * (1.0 - t) * (1.0 - t) / (3.0 * delta * delta);
}

double Cutoff::d2chi_v(double v) const {
  const double t = (v - delta * delta) / (3.0 * delta * delta);
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return -60.0 * t * (1.0 - t) * (1.0 - 2.0 * t) /
         (9.0 * delta * delta * delta * delta);
}

GluedSource::GluedSource(std::shared_ptr<const ExtensionSource> W_unit, double eps,
                         double delta, double C0)
    : W_(std::make_shared<ScaledSource>(std::move(W_unit), eps)),
      eps_(eps),
      delta_(delta),
      cut_(delta) {
  if (!(C0 * eps <= delta))
    throw std::invalid_argument("GluedSource: need C0 * eps <= delta");
  const ParamPoint& p = W_->param();
  green_coef_ = std::pow(eps, 0.5 * (p.n() - 2.0 * p.gamma()));
}

ExtFields GluedSource::green_fields(double r, double x, unsigned mask) const {
  const ParamPoint& p = W_->param();
  const double b = 2.0 * p.gamma() - p.n();
  const double rho2 = r * r + x * x;
  const double rho = std::sqrt(rho2);
  const double g = green_coef_ * std::pow(rho, b);
  const double gp = b * g / rho;
  const double gpp = b * (b - 1.0) * g / rho2;
  ExtFields f;
  f.W = g;
  if (mask & (kFieldGrad | kFieldSecond | kFieldThird)) {
    f.Wr = gp * r / rho;
    f.Wx = gp * x / rho;
    if (mask & (kFieldSecond | kFieldThird)) {
      f.Wrr = gpp * r * r / rho2 + gp * (1.0 / rho - r * r / (rho2 * rho));
      f.Wxx = gpp * x * x / rho2 + gp * (1.0 / rho - x * x / (rho2 * rho));
      f.Wrx = gpp * r * x / rho2 - gp * r * x / (rho2 * rho);
      if (mask & kFieldThird) {
        // d/dx of Wrr for the pure power g = c rho^b
        const double gppp = b * (b - 1.0) * (b - 2.0) * g / (rho2 * rho);
        const double rr = r * r;
        f.Wrrx = x * (gppp * rr / (rho2 * rho) + gpp * (1.0 - 3.0 * rr / rho2) / rho2 -
                      gp * (1.0 / rho2 - 3.0 * rr / (rho2 * rho2)) / rho);
      }
    }
  }
  return f;
}

ExtFields GluedSource::fields(double r, double x, unsigned mask) const {
  const double v = r * r + x * x;
  const double d2 = delta_ * delta_;
  if (v <= d2) return W_->fields(r, x, mask);
  if (v >= 4.0 * d2) return green_fields(r, x, mask);

  const ExtFields w = W_->fields(r, x, mask);
  const ExtFields g = green_fields(r, x, mask);
  const double chi = cut_.chi_v(v);
  const double c1 = cut_.dchi_v(v);
  const double c2 = cut_.d2chi_v(v);
  // chi derivatives in (r, x)
  const double chi_r = 2.0 * r * c1, chi_x = 2.0 * x * c1;
  const double chi_rr = 2.0 * c1 + 4.0 * r * r * c2;
  const double chi_xx = 2.0 * c1 + 4.0 * x * x * c2;
  const double chi_rx = 4.0 * r * x * c2;

  ExtFields d;  // W - G
  d.W = w.W - g.W;
  d.Wr = w.Wr - g.Wr;
  d.Wx = w.Wx - g.Wx;
  d.Wrr = w.Wrr - g.Wrr;
  d.Wrx = w.Wrx - g.Wrx;
  d.Wxx = w.Wxx - g.Wxx;

  ExtFields f;
  f.W = chi * d.W + g.W;
  f.Wr = chi_r * d.W + chi * d.Wr + g.Wr;
  f.Wx = chi_x * d.W + chi * d.Wx + g.Wx;
  f.Wrr = chi_rr * d.W + 2.0 * chi_r * d.Wr + chi * d.Wrr + g.Wrr;
  f.Wxx = chi_xx * d.W + 2.0 * chi_x * d.Wx + chi * d.Wxx + g.Wxx;
  f.Wrx = chi_rx * d.W + chi_r * d.Wx + chi_x * d.Wr + chi * d.Wrx + g.Wrx;
  return f;
}

double GluedSource::boundary(double r) const {
  const double v = r * r;
  const double chi = cut_.chi_v(v);
  const ParamPoint& p = W_->param();
  double tail = 0.0;
  if (chi < 1.0)
    tail = (1.0 - chi) * green_coef_ * std::pow(r, 2.0 * p.gamma() - p.n());
  return chi * W_->boundary(r) + tail;
}

BoundaryExpansion GluedSource::expansion(double r) const {
  // inside the cutoff the layer structure is the bubble's
  if (r * r <= delta_ * delta_) return W_->expansion(r);
  throw std::logic_error("GluedSource::expansion: only available inside the cutoff");
}

double GluedSource::minus_L_typeI(double r, double x) const {
  const double v = r * r + x * x;
  const double d2 = delta_ * delta_;
  if (v <= d2 || v >= 4.0 * d2) return 0.0;
  const ParamPoint& p = W_->param();
  const ExtFields w = W_->fields(r, x, kFieldW | kFieldGrad);
  const ExtFields g = green_fields(r, x, kFieldW | kFieldGrad);
  const double c1 = cut_.dchi_v(v);
  const double c2 = cut_.d2chi_v(v);
  const double dW = w.W - g.W;
  const double grad_pair = 2.0 * c1 * (r * (w.Wr - g.Wr) + x * (w.Wx - g.Wx));
  const double lap_chi = 2.0 * (p.n() + 1.0 + p.m0()) * c1 + 4.0 * v * c2;
  return -(2.0 * grad_pair + lap_chi * dW);
}

double Q_form_typeI(const ExtensionSource& A, const ExtensionSource& B, double R,
                    int split) {
  const ParamPoint& p = A.param();
  const double tg = 2.0 * p.gamma();
  std::vector<PairTerm> terms;
  terms.push_back({p.m0(), kFieldGrad,
                   [](const ExtFields& a, const ExtFields& b, double, double) {
                     return a.Wr * b.Wr;
                   }});
  terms.push_back({tg - 1.0, kFieldGrad,
                   [tg](const ExtFields& a, const ExtFields& b, double, double x) {
                     const double s = std::pow(x, 1.0 - tg);
                     return (s * a.Wx) * (s * b.Wx);
                   }});
  const double feat = std::max(A.scale(), B.scale());
  if (R > 0.0) {
    const auto v = half_ball_pair_integrals(A, B, p.n(), terms, R, split, feat);
    return v[0] + v[1];
  }
  const auto v =
      half_space_pair_integrals(A, B, p.n(), terms, 1024.0 * feat, split, feat);
  return v[0] + v[1];
}

double Q_form_typeII(const ExtensionSource& A, const ExtensionSource& B, double R,
                     int split) {
  const ParamPoint& p = A.param();
  const double m1 = p.m1();
  const int n = p.n();
  auto lap = [m1, n](const ExtFields& f, double r, double x) {
    return f.Wrr + (n - 1.0) * f.Wr / r + f.Wxx + m1 * f.Wx / x;
  };
  std::vector<PairTerm> terms;
  terms.push_back({m1, kFieldGrad | kFieldSecond,
                   [lap](const ExtFields& a, const ExtFields& b, double r, double x) {
                     return lap(a, r, x) * lap(b, r, x);
                   }});
  const double feat = std::max(A.scale(), B.scale());
  if (R > 0.0)
    return half_ball_pair_integrals(A, B, p.n(), terms, R, split, feat)[0];
  return half_space_pair_integrals(A, B, p.n(), terms, 1024.0 * feat, split, feat)[0];
}

double Q_form(const ExtensionSource& A, const ExtensionSource& B, double R, int split) {
  return A.param().regime() == Regime::TypeI ? Q_form_typeI(A, B, R, split)
                                             : Q_form_typeII(A, B, R, split);
}

double boundary_mass(const ParamPoint& p, const std::function<double(double)>& trace,
                     double q, double R, double feature, int split) {
  const int n = p.n();
  const double Rq = R > 0.0 ? R : 256.0 * std::max(1.0, feature);
  std::vector<double> bp;
  bp.push_back(0.0);
  add_geometric(bp, std::min(feature / 32.0, Rq / 32.0), Rq, 2.0);
  bp = merge_breakpoints(bp, 0.0, Rq);
  const GaussRule& gl = gauss_legendre(16);
  double sum = 0.0;
  for (size_t pnl = 0; pnl + 1 < bp.size(); ++pnl) {
    const double width = (bp[pnl + 1] - bp[pnl]) / split;
    for (int s = 0; s < split; ++s) {
      const double a = bp[pnl] + s * width;
      for (size_t i = 0; i < gl.x.size(); ++i) {
        const double r = a + 0.5 * width * (1.0 + gl.x[i]);
        sum += 0.5 * width * gl.w[i] * std::pow(trace(r), q) * std::pow(r, n - 1);
      }
    }
  }
  double tail = 0.0;
  if (R <= 0.0) {
    // trace ~ c r^{2g-n} beyond Rq and q (n-2g) = 2n: exact power tail
    tail = std::pow(trace(Rq), q) * std::pow(Rq, n) / n;
  }
  return sphere_area(n - 1) * (sum + tail);
}

double energy_bar(const ExtensionSource& U, int split) {
  const ParamPoint& p = U.param();
  const ConstantSet& c = constants(p);
  const double num = c.kappa_gamma * Q_form(U, U, -1.0, split);
  const double mass = boundary_mass(
      p, [&U](double r) { return U.boundary(r); }, p.crit_exp(), -1.0, U.scale(),
      split);
  if (!(mass > 0.0)) throw std::runtime_error("energy_bar: vanishing boundary mass");
  return num / std::pow(mass, (p.n() - 2.0 * p.gamma()) / p.n());
}

SelfActionResult glued_self_action(const ParamPoint& p, double eps, double delta,
                                   bool fast, int split) {
  const ConstantSet& c = constants(p);
  const int n = p.n();
  const double tg = 2.0 * p.gamma();
  GluedSource U(bubble_source(p, 1.0, fast), eps, delta);

  // numerator: quadrature over B+(2 delta) plus the exact Green-tail part
  double num;
  if (p.regime() == Regime::TypeI) {
    std::vector<WeightedTerm> terms;
    terms.push_back({p.m0(), kFieldGrad,
                     [](const ExtFields& f, double, double) { return f.Wr * f.Wr; }});
    terms.push_back({tg - 1.0, kFieldGrad,
                     [tg](const ExtFields& f, double, double x) {
                       const double s = std::pow(x, 1.0 - tg) * f.Wx;
                       return s * s;
                     }});
    const auto v = half_ball_field_integrals(U, n, terms, 2.0 * delta, split, eps);
    const double A0 = 0.5 * sphere_area(n - 1) * gamma_fn(0.5 * n) *
                      gamma_fn(0.5 * (p.m0() + 1.0)) /
                      gamma_fn(0.5 * (n + p.m0() + 1.0));
    const double tail = (n - tg) * A0 * std::pow(2.0 * delta, tg - n) *
                        std::pow(eps, n - tg);
    num = c.kappa_gamma * (v[0] + v[1] + tail);
  } else {
    const double m1 = p.m1();
    std::vector<WeightedTerm> terms;
    terms.push_back({m1, kFieldGrad | kFieldSecond,
                     [m1, n](const ExtFields& f, double r, double x) {
                       const double lap = f.Wrr + (n - 1.0) * f.Wr / r + f.Wxx +
                                          m1 * f.Wx / x;
                       return lap * lap;
                     }});
    const auto v = half_ball_field_integrals(U, n, terms, 2.0 * delta, split, eps);
    const double A1 = 0.5 * sphere_area(n - 1) * gamma_fn(0.5 * n) *
                      gamma_fn(0.5 * (m1 + 1.0)) / gamma_fn(0.5 * (n + m1 + 1.0));
    const double tail = 4.0 * (n - tg) * A1 * std::pow(2.0 * delta, tg - n) *
                        std::pow(eps, n - tg);
    num = c.kappa_gamma * (v[0] + tail);
  }

  // boundary mass over [0, 2 delta] plus the exact Green-tail part
  const double q = p.crit_exp();
  double mass = boundary_mass(
      p, [&U](double r) { return U.boundary(r); }, q, 2.0 * delta, eps, split);
  mass += sphere_area(n - 1) * std::pow(eps, n) * std::pow(2.0 * delta, -double(n)) / n;

  SelfActionResult res;
  res.mass = mass;
  res.energy = num / std::pow(mass, (n - tg) / n);
  res.energy_excess_norm = (res.energy - c.Y_sphere) /
                           (std::pow(delta, tg - n) * std::pow(eps, n - tg));
  res.mass_defect_norm = (mass - std::pow(c.Y_sphere, n / tg)) /
                         (std::pow(eps, n) * std::pow(delta, -double(n)));
  const double vm = U.boundary(1.5 * delta);
  const double vin = U.boundary(1.5 * delta * (1.0 - 1e-9));
  res.gluing_jump = std::fabs(vm - vin) / (std::fabs(vm) + 1e-300);
  return res;
}

VerificationReport glued_self_action_sweep(const ParamPoint& p, double delta,
                                           const std::vector<double>& eps_list,
                                           bool fast) {
  VerificationReport rep;
  rep.check_id = "energy.self_action";
  rep.params["n"] = std::to_string(p.n());
  rep.params["gamma"] = std::to_string(p.gamma());
  rep.params["delta"] = std::to_string(delta);
  double e_min = 1e300, e_max = -1e300, m_min = 1e300, m_max = -1e300;
  bool positive = true;
  for (double eps : eps_list) {
    const SelfActionResult r = glued_self_action(p, eps, delta, fast);
    rep.computed.push_back(r.energy_excess_norm);
    rep.computed.push_back(r.mass_defect_norm);
    e_min = std::min(e_min, std::fabs(r.energy_excess_norm));
    e_max = std::max(e_max, std::fabs(r.energy_excess_norm));
    m_min = std::min(m_min, std::fabs(r.mass_defect_norm));
    m_max = std::max(m_max, std::fabs(r.mass_defect_norm));
    if (r.energy_excess_norm <= 0.0) positive = false;
  }
  rep.tolerance = 2.0;
  const bool ok = positive && e_max < 2.0 * e_min && m_max < 2.0 * m_min;
  rep.status = ok ? CheckStatus::pass : CheckStatus::fail;
  return rep;
}

}  // namespace fracyam
