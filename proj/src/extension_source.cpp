#include "fracyam/extension_source.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "fracyam/constants.hpp"
#include "fracyam/gauss.hpp"
#include "fracyam/threads.hpp"

namespace fracyam {

std::array<double, 4> expansion_exponents(const ParamPoint& p) {
  const double tg = 2.0 * p.gamma();
  if (p.regime() == Regime::TypeI) return {tg, 2.0, 2.0 + tg, 4.0};
  return {2.0, tg, 4.0, 2.0 + tg};
}

namespace {

// Least-squares boundary-layer fit of W - f on rows (x_k, dW_k), powers a[].
// Exponents that nearly collide (e.g. x^{2g} vs x^4 as gamma -> 2) make the
// derivative predictions unstable, so the later duplicate column is dropped.
std::array<double, 4> fit_layer(const std::array<double, 4>& a,
                                const std::vector<double>& xs,
                                const std::vector<double>& dW, double scale) {
  const int m = static_cast<int>(xs.size());
  std::array<bool, 4> keep = {true, true, true, true};
  std::vector<int> cols;
  for (int j = 0; j < 4; ++j)
    if (keep[j]) cols.push_back(j);
  const int nc = static_cast<int>(cols.size());
  Eigen::MatrixXd X(m, nc);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < nc; ++j) X(i, j) = std::pow(xs[i] / scale, a[cols[j]]);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) y(i) = dW[i];
  Eigen::VectorXd c = X.colPivHouseholderQr().solve(y);
  std::array<double, 4> psi{};
  for (int j = 0; j < nc; ++j) psi[cols[j]] = c(j) / std::pow(scale, a[cols[j]]);
  return psi;
}

}  // namespace

// ---------------------------------------------------------------------------
// ClosedFormSource

ClosedFormSource::ClosedFormSource(ParamPoint p, double eps) : p_(p), eps_(eps) {
  if (!has_closed_form(p)) throw std::invalid_argument("no closed form here");
}

ExtFields ClosedFormSource::fields(double r, double x, unsigned mask) const {
  return cf_fields(p_, eps_, r, x, mask);
}

double ClosedFormSource::boundary(double r) const { return w_eval(p_, eps_, r); }

BoundaryExpansion ClosedFormSource::expansion(double r) const {
  BoundaryExpansion e;
  const double ell = std::sqrt(eps_ * eps_ + r * r);
  e.cap = 0.04 * ell;
  e.a = expansion_exponents(p_);
  e.f = boundary(r);
  // exact radial derivatives of the bubble trace
  const ConstantSet& c = constants(p_);
  const double ex = 0.5 * (p_.n() - 2.0 * p_.gamma());
  const double B = eps_ * eps_ + r * r;
  const double w = c.alpha_n_gamma * std::pow(eps_ / B, ex);
  e.fr = -2.0 * ex * r * w / B;
  e.frr = -2.0 * ex * w / B + 4.0 * ex * (ex + 1.0) * r * r * w / (B * B);
  // fit psi on geometric rows in [cap, 3.2 cap], then numerical r-derivatives
  auto psis_at = [&](double rr) {
    std::vector<double> xs, dW;
    for (double x = e.cap; x <= 3.2 * e.cap; x *= 1.25) {
      xs.push_back(x);
      dW.push_back(cf_fields(p_, eps_, rr, x, kFieldW).W - boundary(rr));
    }
    return fit_layer(e.a, xs, dW, e.cap);
  };
  const double hr = 1e-3 * ell;
  const auto c0 = psis_at(r);
  const auto cp = psis_at(r + hr);
  const auto cm = psis_at(std::max(0.0, r - hr));
  for (int j = 0; j < 4; ++j) {
    e.psi[j] = c0[j];
    e.psi_r[j] = (cp[j] - cm[j]) / (2.0 * hr);
    e.psi_rr[j] = (cp[j] - 2.0 * c0[j] + cm[j]) / (hr * hr);
  }
  return e;
}

// ---------------------------------------------------------------------------
// BubbleTableSource

BubbleTableSource::BubbleTableSource(ParamPoint p)
    : BubbleTableSource(p, Options()) {}

BubbleTableSource::BubbleTableSource(ParamPoint p, Options opt)
    : p_(p), opt_(opt), expo_(expansion_exponents(p)) {
  // near gamma -> 2 the layer exponents 2g and 4 collide and derivative
  // predictions from the fitted layer degrade; shrink the layer so the
  // quadrature table carries the load instead
  if (p.regime() == Regime::TypeII && std::fabs(2.0 * p.gamma() - 4.0) < 0.5)
    opt_.cap_frac = std::min(opt_.cap_frac, 0.015);
  const double u_min = 0.20 * opt_.cap_frac;  // lowest filled x at r << 1
  t0_ = std::log(opt_.r_min);
  u0_ = std::log(u_min);
  nt_ = static_cast<int>(std::ceil((std::log(opt_.r_max) - t0_) / opt_.h)) + 1;
  nu_ = static_cast<int>(std::ceil((std::log(opt_.r_max) - u0_) / opt_.h)) + 1;
  W_.assign(nt_ * nu_, 0.0);
  fill_from_.assign(nt_, 0);

  const RadialData data = bubble_boundary_data(p_, 1.0);

  // pass 1: Poisson quadrature for x >= 0.20 cap(r)
  std::vector<double> rv(nt_), xv(nu_);
  for (int it = 0; it < nt_; ++it) rv[it] = std::exp(t0_ + it * opt_.h);
  for (int iu = 0; iu < nu_; ++iu) xv[iu] = std::exp(u0_ + iu * opt_.h);
  for (int it = 0; it < nt_; ++it) {
    int from = 0;
    while (from < nu_ && xv[from] < 0.20 * cap(rv[it])) ++from;
    fill_from_[it] = from;
  }
  parallel_for(nt_, [&](int it) {
    for (int iu = fill_from_[it]; iu < nu_; ++iu)
      W_[it * nu_ + iu] = extend(p_, data, xv[iu], rv[it]);
  });

  // pass 2: log-space derivative tables (8th order interior, shifted at edges)
  auto d_along_t = [&](const std::vector<double>& src, int order) {
    std::vector<double> out(nt_ * nu_, 0.0);
    std::vector<double> nodes(9);
    for (int it = 0; it < nt_; ++it) {
      int lo = std::clamp(it - 4, 0, nt_ - 9);
      for (int k = 0; k < 9; ++k) nodes[k] = (lo + k - it) * opt_.h;
      const auto wts = fd_weights(0.0, nodes, order);
      for (int iu = 0; iu < nu_; ++iu) {
        double acc = 0.0;
        for (int k = 0; k < 9; ++k) acc += wts[k] * src[(lo + k) * nu_ + iu];
        out[it * nu_ + iu] = acc;
      }
    }
    return out;
  };
  auto d_along_u = [&](const std::vector<double>& src, int order) {
    std::vector<double> out(nt_ * nu_, 0.0);
    std::vector<double> nodes(9);
    for (int iu = 0; iu < nu_; ++iu) {
      int lo = std::clamp(iu - 4, 0, nu_ - 9);
      for (int k = 0; k < 9; ++k) nodes[k] = (lo + k - iu) * opt_.h;
      const auto wts = fd_weights(0.0, nodes, order);
      for (int it = 0; it < nt_; ++it) {
        double acc = 0.0;
        for (int k = 0; k < 9; ++k) acc += wts[k] * src[it * nu_ + lo + k];
        out[it * nu_ + iu] = acc;
      }
    }
    return out;
  };
  Wt_ = d_along_t(W_, 1);
  Wu_ = d_along_u(W_, 1);
  Wtt_ = d_along_t(W_, 2);
  Wuu_ = d_along_u(W_, 2);
  Wtu_ = d_along_t(Wu_, 1);
  if (opt_.max_mask & kFieldThird) Wttu_ = d_along_t(Wtu_, 1);

  // pass 3: boundary-layer fits per column + t-derivatives of coefficients
  for (auto& v : psi_) v.assign(nt_, 0.0);
  for (int it = 0; it < nt_; ++it) {
    const double r = rv[it];
    const double cp = cap(r);
    std::vector<double> xs, dW;
    const double f = boundary(r);
    for (int iu = fill_from_[it]; iu < nu_; ++iu) {
      if (xv[iu] < cp) continue;
      if (xv[iu] > 3.3 * cp) break;
      xs.push_back(xv[iu]);
      dW.push_back(W_[it * nu_ + iu] - f);
    }
    if (xs.size() < 6) throw std::runtime_error("BubbleTableSource: fit window too thin");
    const auto psis = fit_layer(expo_, xs, dW, cp);
    for (int j = 0; j < 4; ++j) psi_[j][it] = psis[j];
  }
  for (int j = 0; j < 4; ++j) {
    psi_t_[j].assign(nt_, 0.0);
    psi_tt_[j].assign(nt_, 0.0);
    std::vector<double> nodes(9);
    for (int it = 0; it < nt_; ++it) {
      int lo = std::clamp(it - 4, 0, nt_ - 9);
      for (int k = 0; k < 9; ++k) nodes[k] = (lo + k - it) * opt_.h;
      const auto w1 = fd_weights(0.0, nodes, 1);
      const auto w2 = fd_weights(0.0, nodes, 2);
      double a1 = 0.0, a2 = 0.0;
      for (int k = 0; k < 9; ++k) {
        a1 += w1[k] * psi_[j][lo + k];
        a2 += w2[k] * psi_[j][lo + k];
      }
      psi_t_[j][it] = a1;
      psi_tt_[j][it] = a2;
    }
  }
}

double BubbleTableSource::cap(double r) const {
  return opt_.cap_frac * std::sqrt(1.0 + r * r);
}

double BubbleTableSource::boundary(double r) const { return w_eval(p_, 1.0, r); }

namespace {
// 6-point Lagrange weights at offset s in [2,3] relative to stencil start.
inline void lagrange6(double s, double* w) {
  static const double den[6] = {-120, 24, -12, 12, -24, 120};
  double prod[7];
  prod[0] = 1.0;
  for (int k = 0; k < 6; ++k) prod[k + 1] = prod[k] * (s - k);
  double suf[7];
  suf[6] = 1.0;
  for (int k = 5; k >= 0; --k) suf[k] = suf[k + 1] * (s - k);
  for (int k = 0; k < 6; ++k) w[k] = prod[k] * suf[k + 1] / den[k];
}
}  // namespace

ExtFields BubbleTableSource::table_fields(double r, double x, unsigned mask) const {
  const double t = std::log(r), u = std::log(x);
  double st = (t - t0_) / opt_.h, su = (u - u0_) / opt_.h;
  int it = std::clamp(static_cast<int>(std::floor(st)) - 2, 0, nt_ - 6);
  int iu = std::clamp(static_cast<int>(std::floor(su)) - 2, 0, nu_ - 6);
  double wt[6], wu[6];
  lagrange6(st - it, wt);
  lagrange6(su - iu, wu);
  auto pick = [&](const std::vector<double>& tab) {
    double acc = 0.0;
    for (int a = 0; a < 6; ++a) {
      double row = 0.0;
      const double* base = tab.data() + (it + a) * nu_ + iu;
      for (int b = 0; b < 6; ++b) row += wu[b] * base[b];
      acc += wt[a] * row;
    }
    return acc;
  };
  ExtFields f;
  f.W = pick(W_);
  if (mask & (kFieldGrad | kFieldSecond | kFieldThird)) {
    const double vt = pick(Wt_), vu = pick(Wu_);
    f.Wr = vt / r;
    f.Wx = vu / x;
    if (mask & (kFieldSecond | kFieldThird)) {
      f.Wrr = (pick(Wtt_) - vt) / (r * r);
      const double vtu = pick(Wtu_);
      f.Wrx = vtu / (r * x);
      f.Wxx = (pick(Wuu_) - vu) / (x * x);
      if (mask & kFieldThird) f.Wrrx = (pick(Wttu_) - vtu) / (r * r * x);
    }
  }
  return f;
}

ExtFields BubbleTableSource::expansion_fields(const BoundaryExpansion& e, double r,
                                              double x, unsigned mask) const {
  ExtFields f;
  f.W = e.f;
  f.Wr = e.fr;
  f.Wrr = e.frr;
  for (int j = 0; j < 4; ++j) {
    const double xa = std::pow(x, e.a[j]);
    f.W += e.psi[j] * xa;
    if (mask & (kFieldGrad | kFieldSecond | kFieldThird)) {
      f.Wr += e.psi_r[j] * xa;
      f.Wx += e.psi[j] * e.a[j] * xa / x;
      if (mask & (kFieldSecond | kFieldThird)) {
        f.Wrr += e.psi_rr[j] * xa;
        f.Wrx += e.psi_r[j] * e.a[j] * xa / x;
        f.Wxx += e.psi[j] * e.a[j] * (e.a[j] - 1.0) * xa / (x * x);
        if (mask & kFieldThird) f.Wrrx += e.psi_rr[j] * e.a[j] * xa / x;
      }
    }
  }
  return f;
}

BoundaryExpansion BubbleTableSource::expansion(double r) const {
  BoundaryExpansion e;
  e.a = expo_;
  e.cap = cap(r);
  const double rc = std::max(r, opt_.r_min * 1.001);
  const double t = std::log(rc);
  double st = (t - t0_) / opt_.h;
  int it = std::clamp(static_cast<int>(std::floor(st)) - 2, 0, nt_ - 6);
  double wt[6];
  lagrange6(st - it, wt);
  const bool tiny = r < opt_.r_min;  // even extension: treat psi as flat below r_min
  for (int j = 0; j < 4; ++j) {
    double v = 0, vt = 0, vtt = 0;
    for (int a = 0; a < 6; ++a) {
      v += wt[a] * psi_[j][it + a];
      vt += wt[a] * psi_t_[j][it + a];
      vtt += wt[a] * psi_tt_[j][it + a];
    }
    e.psi[j] = v;
    e.psi_r[j] = tiny ? 0.0 : vt / rc;
    e.psi_rr[j] = tiny ? 0.0 : (vtt - vt) / (rc * rc);
  }
  // exact bubble trace derivatives
  const ConstantSet& c = constants(p_);
  const double ex = 0.5 * (p_.n() - 2.0 * p_.gamma());
  const double B = 1.0 + r * r;
  const double w = c.alpha_n_gamma * std::pow(1.0 / B, ex);
  e.f = w;
  e.fr = -2.0 * ex * r * w / B;
  e.frr = -2.0 * ex * w / B + 4.0 * ex * (ex + 1.0) * r * r * w / (B * B);
  return e;
}

ExtFields BubbleTableSource::fields(double r, double x, unsigned mask) const {
  if (x <= 0.0) throw std::invalid_argument("fields: x must be > 0");
  // even extension below the first column
  if (r < opt_.r_min) {
    ExtFields f = fields(opt_.r_min, x, mask);
    const double sc = r / opt_.r_min;
    f.Wr *= sc;
    f.Wrx *= sc;
    return f;
  }
  const double cp = cap(r);
  if (x >= 0.80 * cp) return table_fields(r, x, mask);
  const BoundaryExpansion e = expansion(r);
  if (x <= 0.55 * cp) return expansion_fields(e, r, x, mask);
  const double s = (x - 0.55 * cp) / (0.25 * cp);
  const double b = s * s * (3.0 - 2.0 * s);
  ExtFields fe = expansion_fields(e, r, x, mask);
  ExtFields ft = table_fields(r, x, mask);
  ExtFields f;
  f.W = (1 - b) * fe.W + b * ft.W;
  f.Wr = (1 - b) * fe.Wr + b * ft.Wr;
  f.Wx = (1 - b) * fe.Wx + b * ft.Wx;
  f.Wrr = (1 - b) * fe.Wrr + b * ft.Wrr;
  f.Wrx = (1 - b) * fe.Wrx + b * ft.Wrx;
  f.Wxx = (1 - b) * fe.Wxx + b * ft.Wxx;
  f.Wrrx = (1 - b) * fe.Wrrx + b * ft.Wrrx;
  return f;
}

// ---------------------------------------------------------------------------
// ScaledSource

ScaledSource::ScaledSource(std::shared_ptr<const ExtensionSource> base, double eps)
    : base_(std::move(base)), eps_(eps) {
  if (!(eps_ > 0.0)) throw std::invalid_argument("ScaledSource: eps <= 0");
}

ExtFields ScaledSource::fields(double r, double x, unsigned mask) const {
  const double e = 0.5 * (param().n() - 2.0 * param().gamma());
  ExtFields f = base_->fields(r / eps_, x / eps_, mask);
  const double s0 = std::pow(eps_, -e);
  f.W *= s0;
  f.Wr *= s0 / eps_;
  f.Wx *= s0 / eps_;
  f.Wrr *= s0 / (eps_ * eps_);
  f.Wrx *= s0 / (eps_ * eps_);
  f.Wxx *= s0 / (eps_ * eps_);
  f.Wrrx *= s0 / (eps_ * eps_ * eps_);
  return f;
}

double ScaledSource::boundary(double r) const {
  const double e = 0.5 * (param().n() - 2.0 * param().gamma());
  return std::pow(eps_, -e) * base_->boundary(r / eps_);
}

BoundaryExpansion ScaledSource::expansion(double r) const {
  const double e = 0.5 * (param().n() - 2.0 * param().gamma());
  BoundaryExpansion b = base_->expansion(r / eps_);
  BoundaryExpansion out = b;
  const double s0 = std::pow(eps_, -e);
  out.cap = b.cap * eps_;
  out.f = s0 * b.f;
  out.fr = s0 / eps_ * b.fr;
  out.frr = s0 / (eps_ * eps_) * b.frr;
  for (int j = 0; j < 4; ++j) {
    const double sj = s0 * std::pow(eps_, -b.a[j]);
    out.psi[j] = sj * b.psi[j];
    out.psi_r[j] = sj / eps_ * b.psi_r[j];
    out.psi_rr[j] = sj / (eps_ * eps_) * b.psi_rr[j];
  }
  return out;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const ExtensionSource> bubble_source(const ParamPoint& p, double eps,
                                                     bool fast) {
  std::shared_ptr<const ExtensionSource> unit;
  if (has_closed_form(p)) {
    unit = std::make_shared<ClosedFormSource>(p, 1.0);
  } else {
    static std::map<std::tuple<int, double, bool>, std::shared_ptr<const ExtensionSource>>
        cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p.n(), p.gamma(), fast);
    auto it = cache.find(key);
    if (it == cache.end()) {
      BubbleTableSource::Options opt;
      if (fast) {
        opt.h = 0.13;
        opt.gl_s = 10;
      }
      it = cache.emplace(key, std::make_shared<BubbleTableSource>(p, opt)).first;
    }
    unit = it->second;
  }
  if (eps == 1.0) return unit;
  return std::make_shared<ScaledSource>(unit, eps);
}

}  // namespace fracyam
