#include "fracyam/bubble.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "fracyam/constants.hpp"
#include "fracyam/gamma.hpp"
#include "fracyam/gauss.hpp"

namespace fracyam {

double w_eval(const ParamPoint& p, double eps, double dist) {
  const ConstantSet& c = constants(p);
  const double e = (p.n() - 2.0 * p.gamma()) / 2.0;
  return c.alpha_n_gamma * std::pow(eps / (eps * eps + dist * dist), e);
}

double w_eval(const BubbleParams& b, const std::vector<double>& xbar) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < xbar.size(); ++i) {
    const double s = i < b.sigma.size() ? b.sigma[i] : 0.0;
    d2 += (xbar[i] - s) * (xbar[i] - s);
  }
  return w_eval(b.p, b.eps, std::sqrt(d2));
}

ExtFields cf_fields_3_05(double eps, double r, double x, unsigned mask) {
  // W_eps(r,x) = eps^{-1} W_1(r/eps, x/eps), W_1 = 2/((1+x)^2 + r^2)
  const double ri = r / eps, xi = x / eps;
  const double D = (1.0 + xi) * (1.0 + xi) + ri * ri;
  const double D2 = D * D, D3 = D2 * D, D4 = D3 * D;
  ExtFields f;
  f.W = 2.0 / D / eps;
  if (mask & (kFieldGrad | kFieldSecond | kFieldThird)) {
    const double s2 = eps * eps;
    f.Wr = -4.0 * ri / D2 / s2;
    f.Wx = -4.0 * (1.0 + xi) / D2 / s2;
    if (mask & (kFieldSecond | kFieldThird)) {
      const double s3 = s2 * eps;
      f.Wrr = (-4.0 / D2 + 16.0 * ri * ri / D3) / s3;
      f.Wrx = 16.0 * ri * (1.0 + xi) / D3 / s3;
      f.Wxx = (-4.0 / D2 + 16.0 * (1.0 + xi) * (1.0 + xi) / D3) / s3;
      if (mask & kFieldThird) {
        const double s4 = s3 * eps;
        f.Wrrx = (16.0 * (1.0 + xi) / D3 - 96.0 * ri * ri * (1.0 + xi) / D4) / s4;
      }
    }
  }
  return f;
}

ExtFields cf_fields_7_15(double eps, double r, double x, unsigned mask) {
  // W_eps(r,x) = eps^{-2} W_1(r/eps, x/eps)
  static const double alpha =
      constants(ParamPoint(7, 1.5)).alpha_n_gamma;  // 16 * 3^{2/3}
  const double ri = r / eps, xi = x / eps;
  const double D = (1.0 + xi) * (1.0 + xi) + ri * ri;
  const double D2 = D * D, D3 = D2 * D, D4 = D3 * D, D5 = D4 * D, D6 = D5 * D;
  const double u1 = D + 6.0 * xi;        // xi^2 + 8 xi + 1 + ri^2
  const double u2 = D + 6.0 + 6.0 * xi;  // xi^2 + 8 xi + 7 + ri^2
  ExtFields f;
  const double s2 = eps * eps;
  f.W = alpha * (1.0 / D2 + 4.0 * xi / D3) / s2;
  if (mask & (kFieldGrad | kFieldSecond | kFieldThird)) {
    const double s3 = s2 * eps;
    f.Wr = -4.0 * alpha * ri * u1 / D4 / s3;
    f.Wx = -4.0 * alpha * xi * u2 / D4 / s3;
    if (mask & (kFieldSecond | kFieldThird)) {
      const double s4 = s3 * eps;
      f.Wrr = alpha * (-4.0 * u1 / D4 - 8.0 * ri * ri / D4 + 32.0 * ri * ri * u1 / D5) / s4;
      f.Wrx = alpha * (-4.0 * ri * (2.0 * xi + 8.0) / D4 +
                       32.0 * ri * (1.0 + xi) * u1 / D5) / s4;
      f.Wxx = alpha * (-4.0 * u2 / D4 - 4.0 * xi * (2.0 * xi + 8.0) / D4 +
                       32.0 * xi * (1.0 + xi) * u2 / D5) / s4;
      if (mask & kFieldThird) {
        const double s5 = s4 * eps;
        f.Wrrx = alpha *
                 (-4.0 * (2.0 * xi + 8.0) / D4 + 32.0 * u1 * (1.0 + xi) / D5 +
                  64.0 * ri * ri * (1.0 + xi) / D5 +
                  32.0 * ri * ri * (2.0 * xi + 8.0) / D5 -
                  320.0 * ri * ri * u1 * (1.0 + xi) / D6) / s5;
      }
    }
  }
  return f;
}

bool has_closed_form(const ParamPoint& p) {
  return (p.n() == 3 && p.gamma() == 0.5) || (p.n() == 7 && p.gamma() == 1.5);
}

ExtFields cf_fields(const ParamPoint& p, double eps, double r, double x, unsigned mask) {
  if (p.n() == 3 && p.gamma() == 0.5) return cf_fields_3_05(eps, r, x, mask);
  if (p.n() == 7 && p.gamma() == 1.5) return cf_fields_7_15(eps, r, x, mask);
  throw std::invalid_argument("cf_fields: no closed form at this (n, gamma)");
}

double W_closed_form(double eps, double r, double xN) {
  return cf_fields_7_15(eps, r, xN, kFieldW).W;
}

Deriv32 W_derivatives_32(double eps, double r, double xN) {
  const ExtFields f = cf_fields_7_15(eps, r, xN, kFieldGrad | kFieldSecond);
  Deriv32 d;
  d.dr = f.Wr;
  d.dN = f.Wx;
  // 24 alpha r^2 (x^2 + 10x + 1 + r^2) / D^5, assembled from the fields to
  // avoid duplicating the scaling.
  d.drr_minus = r > 0.0 ? f.Wrr - f.Wr / r : 0.0;
  if (r == 0.0) d.drr_minus = 0.0;
  return d;
}

RadialData bubble_boundary_data(const ParamPoint& p, double eps) {
  RadialData d;
  d.f = [p, eps](double s) { return w_eval(p, eps, s); };
  d.tail_exp = p.n() - 2.0 * p.gamma();
  d.feature_scale = eps;
  return d;
}

double kernel_theta_integral(int n, double P, double q2, double rs) {
  if (rs <= 0.0 || 4.0 * rs < 1e-9 * q2) {
    // degenerate: midpoint of the (nearly constant) kernel
    const double c = std::sqrt(M_PI) * gamma_fn(0.5 * (n - 1)) / gamma_fn(0.5 * n);
    return c * std::pow(q2 + 2.0 * rs, -P);
  }
  if (n == 3) {
    return (std::pow(q2, 1.0 - P) - std::pow(q2 + 4.0 * rs, 1.0 - P)) /
           (2.0 * rs * (P - 1.0));
  }
  // phi-form: 2^{n-1} int_0^{pi/2} (sin cos)^{n-2} (q2 + 4 rs sin^2)^{-P} dphi
  const double B = 4.0 * rs;
  const double phi_star = std::sqrt(q2 / B);
  std::vector<double> bp;
  bp.push_back(0.0);
  if (phi_star < M_PI / 4.0) add_geometric(bp, phi_star, M_PI / 2.0, 2.0);
  bp = merge_breakpoints(bp, 0.0, M_PI / 2.0);
  const GaussRule& gl = gauss_legendre(10);
  double sum = 0.0;
  for (size_t pnl = 0; pnl + 1 < bp.size(); ++pnl) {
    const double a = bp[pnl], w = bp[pnl + 1] - bp[pnl];
    for (size_t i = 0; i < gl.x.size(); ++i) {
      const double phi = a + 0.5 * w * (1.0 + gl.x[i]);
      const double sp = std::sin(phi), cp = std::cos(phi);
      sum += 0.5 * w * gl.w[i] * std::pow(sp * cp, n - 2) *
             std::pow(q2 + B * sp * sp, -P);
    }
  }
  return std::pow(2.0, n - 1) * sum;
}

double extend(const ParamPoint& p, const RadialData& data, double xN, double r) {
  if (xN < 0.0) throw std::invalid_argument("extend: xN < 0");
  if (data.tail_exp != 0.0 && data.tail_exp < p.n() - 2.0 * p.gamma())
    throw std::invalid_argument("extend: boundary data decays too slowly");
  if (xN == 0.0) return data.f(r);

  const int n = p.n();
  const double g = p.gamma();
  const double P = 0.5 * (n + 2.0 * g);
  const ConstantSet& c = constants(p);
  const double fs = data.feature_scale;

  const double S0 = 50.0 * std::max({1.0 * fs, r, xN});
  std::vector<double> bp;
  bp.push_back(0.0);
  add_geometric(bp, std::min({fs / 32.0, S0 / 32.0, xN / 4.0}), S0, 2.0);
  if (xN < r) {
    bp.push_back(r);
    for (double w = 0.5 * xN; w < r; w *= 2.0) {
      bp.push_back(r - w);
      bp.push_back(r + w);
    }
  }
  bp = merge_breakpoints(bp, 0.0, S0);

  const GaussRule& gl = gauss_legendre(14);
  double sum = 0.0;
  for (size_t pnl = 0; pnl + 1 < bp.size(); ++pnl) {
    const double a = bp[pnl], w = bp[pnl + 1] - bp[pnl];
    for (size_t i = 0; i < gl.x.size(); ++i) {
      const double s = a + 0.5 * w * (1.0 + gl.x[i]);
      const double q2 = (r - s) * (r - s) + xN * xN;
      sum += 0.5 * w * gl.w[i] * data.f(s) * std::pow(s, n - 1) *
             kernel_theta_integral(n, P, q2, r * s);
    }
  }

  // analytic power tail: f ~ f(S0) (S0/s)^{tail_exp}, kernel ~ s^{-2P}
  double tail = 0.0;
  if (data.tail_exp > 0.0) {
    const double c_ang = std::sqrt(M_PI) * gamma_fn(0.5 * (n - 1)) / gamma_fn(0.5 * n);
    const double a_pow = 2.0 * P + data.tail_exp - n;
    tail = data.f(S0) * std::pow(S0, data.tail_exp) * c_ang *
           std::pow(S0, -a_pow) / a_pow;
  }

  return c.p_n_gamma * sphere_area(n - 2) * std::pow(xN, 2.0 * g) * (sum + tail);
}

RadialProfile::RadialProfile(ParamPoint pp, std::vector<double> rg, std::vector<double> xg)
    : p(pp), r_grid(std::move(rg)), xN_grid(std::move(xg)) {
  for (size_t i = 1; i < r_grid.size(); ++i)
    if (r_grid[i] <= r_grid[i - 1])
      throw std::invalid_argument("RadialProfile: r grid not increasing");
  for (size_t i = 1; i < xN_grid.size(); ++i)
    if (xN_grid[i] <= xN_grid[i - 1])
      throw std::invalid_argument("RadialProfile: xN grid not increasing");
  if (!r_grid.empty() && r_grid.front() < 0.0)
    throw std::invalid_argument("RadialProfile: negative r");
  values.assign(r_grid.size() * xN_grid.size(), 0.0);
}

void RadialProfile::write_csv(std::ostream& os) const {
  os << "r,xN,value\n";
  for (size_t ir = 0; ir < r_grid.size(); ++ir)
    for (size_t ix = 0; ix < xN_grid.size(); ++ix)
      os << r_grid[ir] << ',' << xN_grid[ix] << ',' << at(ir, ix) << '\n';
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  const double t0 = std::log(lo), t1 = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[i] = std::exp(t0 + (t1 - t0) * i / (count - 1));
  return g;
}

RadialProfile build_profile(const ParamPoint& p,
                            const std::function<double(double, double)>& W,
                            const std::vector<double>& r_grid,
                            const std::vector<double>& xN_grid) {
  RadialProfile prof(p, r_grid, xN_grid);
  for (size_t ir = 0; ir < r_grid.size(); ++ir)
    for (size_t ix = 0; ix < xN_grid.size(); ++ix)
      prof.at(ir, ix) = W(r_grid[ir], xN_grid[ix]);
  return prof;
}

std::vector<std::pair<double, double>> decay_samples() {
  std::vector<std::pair<double, double>> s;
  for (double rho : {1.0, 1.3, 1.7, 2.0, 8.0, 10.5, 13.0, 16.0}) {
    for (double frac : {0.15, 0.35, 0.55, 0.75, 0.95}) {
      const double x = rho * frac;
      const double r = std::sqrt(rho * rho - x * x);
      s.emplace_back(r, x);
    }
  }
  return s;
}

VerificationReport decay_check(
    const ParamPoint& p,
    const std::function<ExtFields(double, double, unsigned)>& fields,
    const std::vector<std::pair<double, double>>& samples) {
  const int n = p.n();
  const double g = p.gamma();
  const int n_items = g > 1.0 ? 5 : 4;
  std::vector<double> near_max(n_items, 0.0), far_max(n_items, 0.0);

  for (auto [r, x] : samples) {
    const double rho2 = r * r + x * x;
    const double rho = std::sqrt(rho2);
    if (rho < 1.0 || rho > 16.0 || x <= 0.0) continue;
    const bool near = rho <= 2.0;
    const bool far = rho >= 8.0;
    if (!near && !far) continue;
    const ExtFields f = fields(r, x, kFieldAll);
    const double b = 1.0 + rho2;
    std::vector<double> ratio(n_items);
    ratio[0] = std::fabs(f.W) / std::pow(b, -0.5 * (n - 2.0 * g));
    ratio[1] = std::fabs(f.Wx) / (std::pow(x, 2.0 * g - 1.0) * std::pow(b, -0.5 * n));
    ratio[2] = std::fabs(f.Wr) / std::pow(b, -0.5 * (n - 2.0 * g + 1.0));
    const double hess = std::sqrt(f.Wrr * f.Wrr +
                                  (n - 1.0) * (r > 0 ? f.Wr / r * (f.Wr / r) : 0.0));
    ratio[3] = hess / std::pow(b, -0.5 * (n - 2.0 * g + 2.0));
    if (n_items == 5) {
      const double dh = std::sqrt(f.Wrrx * f.Wrrx +
                                  (n - 1.0) * (r > 0 ? (f.Wrx / r) * (f.Wrx / r) : 0.0));
      ratio[4] = dh / (std::pow(x, 2.0 * g - 1.0) * std::pow(b, -0.5 * (n + 2.0)));
    }
    for (int i = 0; i < n_items; ++i) {
      auto& mx = near ? near_max[i] : far_max[i];
      mx = std::max(mx, ratio[i]);
    }
  }

  VerificationReport rep;
  rep.check_id = "bubble.decay_envelopes";
  rep.params["n"] = std::to_string(n);
  rep.params["gamma"] = std::to_string(g);
  bool ok = true;
  for (int i = 0; i < n_items; ++i) {
    rep.computed.push_back(near_max[i]);
    rep.computed.push_back(far_max[i]);
    if (!(far_max[i] <= 1.5 * near_max[i] + 1e-12)) ok = false;
    if (!std::isfinite(near_max[i]) || !std::isfinite(far_max[i])) ok = false;
  }
  rep.tolerance = 1.5;
  rep.status = ok ? CheckStatus::pass : CheckStatus::fail;
  return rep;
}

}  // namespace fracyam
