#include "fracyam/minimizer.hpp"

#include <algorithm>
#include <cmath>

#include "fracyam/bubble.hpp"
#include "fracyam/constants.hpp"
#include "fracyam/gamma.hpp"
#include "fracyam/gauss.hpp"

namespace fracyam {

TraceEnergy::TraceEnergy(ParamPoint p) : TraceEnergy(p, Options()) {}

TraceEnergy::TraceEnergy(ParamPoint p, Options opt) : p_(p), opt_(opt) {
  const int n = p.n();
  const double g = p.gamma();
  const ConstantSet& cset = constants(p);
  mass0_ = std::pow(cset.Y_sphere, n / (2.0 * g));

  // uniform grid in t = log r with Gregory end-corrected weights (order 6)
  const double t0 = std::log(opt.r_min), t1 = std::log(opt.r_max);
  const int N = opt.panels * opt.nodes;
  const double h = (t1 - t0) / (N - 1);
  r_.resize(N);
  for (int i = 0; i < N; ++i) r_[i] = std::exp(t0 + i * h);
  static const double greg[5] = {95.0 / 288.0, 317.0 / 240.0, 23.0 / 30.0,
                                 793.0 / 720.0, 157.0 / 160.0};
  std::vector<double> tw(N, h);
  for (int k = 0; k < 5 && k < N; ++k) {
    tw[k] = h * greg[k];
    tw[N - 1 - k] = h * greg[k];
  }

  w_meas_ = Eigen::VectorXd(N);
  const double area = sphere_area(n - 1);
  for (int i = 0; i < N; ++i) w_meas_(i) = area * tw[i] * std::pow(r_[i], n);

  // Fractional-Laplacian rows from the differentiated Poisson kernel at two
  // small heights with one Richardson step. TypeI: -kappa x^{1-2g} dU/dx =
  // integral of f(s) [2g Theta_P - 2P x^2 Theta_{P+1}] reduced kernels.
  // TypeII: kappa x^{m1} d(Delta_{m1} U)/dx via the kernel identity
  // Delta_{m1} K = 2 Kx / x (the Poisson kernel is Delta_{m0}-harmonic).
  const double tg = 2.0 * g;
  const double P = 0.5 * (n + tg);
  const double kap = cset.kappa_gamma;
  const double pref0 = cset.p_n_gamma * sphere_area(n - 2);

  const double x_star = opt.fit_x0;
  const double heights[2] = {x_star, 2.0 * x_star};
  const double gap = p.regime() == Regime::TypeI
                         ? std::min(2.0 - tg + 1e-12, 2.0)
                         : std::min(2.0, 4.0 - tg);
  const double qr = std::pow(2.0, gap);
  const double rich[2] = {qr / (qr - 1.0), -1.0 / (qr - 1.0)};

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  const GaussRule& glq = gauss_legendre(opt.quad_nodes);

  auto assemble_row = [&](double r, double* row) {
    for (int hk = 0; hk < 2; ++hk) {
      const double x = heights[hk];
      const double S0 = 50.0 * std::max({1.0, r, x});
      std::vector<double> bp;
      bp.push_back(0.0);
      add_geometric(bp, std::min(opt.r_min / 4.0, x), S0, 2.0);
      bp.push_back(r);
      for (double w = 0.5 * x; w < r; w *= 2.0) {
        bp.push_back(r - w);
        bp.push_back(r + w);
      }
      bp = merge_breakpoints(bp, 0.0, S0);

      const double coef = rich[hk] * pref0 * (p_.regime() == Regime::TypeI
                                                  ? -kap
                                                  : kap);
      for (size_t pnl = 0; pnl + 1 < bp.size(); ++pnl) {
        const double a = bp[pnl], w = bp[pnl + 1] - bp[pnl];
        for (int qi = 0; qi < opt.quad_nodes; ++qi) {
          const double sq = a + 0.5 * w * (1.0 + glq.x[qi]);
          const double q2 = (r - sq) * (r - sq) + x * x;
          double kerval;
          if (p_.regime() == Regime::TypeI) {
            const double t1 = kernel_theta_integral(n, P, q2, r * sq);
            const double t2 = kernel_theta_integral(n, P + 1.0, q2, r * sq);
            kerval = tg * t1 - 2.0 * P * x * x * t2;
          } else {
            const double t1 = kernel_theta_integral(n, P, q2, r * sq);
            const double t2 = kernel_theta_integral(n, P + 1.0, q2, r * sq);
            const double t3 = kernel_theta_integral(n, P + 2.0, q2, r * sq);
            const double kx_over_x = tg * t1 - 2.0 * P * x * x * t2;
            const double kxx = tg * (tg - 1.0) * t1 -
                               2.0 * P * (4.0 * g + 1.0) * x * x * t2 +
                               4.0 * P * (P + 1.0) * x * x * x * x * t3;
            kerval = 2.0 * std::pow(x, p_.m1() + tg - 3.0) * (kxx - kx_over_x);
          }
          const double ker =
              kerval * std::pow(sq, n - 1) * 0.5 * w * glq.w[qi] * coef;
          const double t = std::log(sq);
          if (t <= t0) {
            row[0] += ker * w_eval(p_, 1.0, sq) / w_eval(p_, 1.0, r_[0]);
          } else if (t >= t1) {
            row[N - 1] += ker * w_eval(p_, 1.0, sq) / w_eval(p_, 1.0, r_[N - 1]);
          } else {
            const double pos = (t - t0) / h;
            int lo6 = std::clamp(static_cast<int>(std::floor(pos)) - 2, 0, N - 6);
            const double sloc = pos - lo6;
            double prod[7], suf[7];
            prod[0] = 1.0;
            for (int m = 0; m < 6; ++m) prod[m + 1] = prod[m] * (sloc - m);
            suf[6] = 1.0;
            for (int m = 5; m >= 0; --m) suf[m] = suf[m + 1] * (sloc - m);
            static const double den6[6] = {-120, 24, -12, 12, -24, 120};
            for (int m = 0; m < 6; ++m)
              row[lo6 + m] += ker * prod[m] * suf[m + 1] / den6[m];
          }
        }
      }
    }
  };

  std::vector<double> rowbuf(N);
  for (int i = 0; i < N; ++i) {
    std::fill(rowbuf.begin(), rowbuf.end(), 0.0);
    assemble_row(r_[i], rowbuf.data());
    for (int j = 0; j < N; ++j) A(i, j) = rowbuf[j];
  }

  T_ = A;

  // The closures continue the data with the bubble shape at both ends; the
  // critical integrand |u_ext|^q and the pairing u_ext T_ext then share ONE
  // diagonal cap/tail weight (q = 1 + (n+2g)/(n-2g)), so the quadratic form
  // and the mass see identical end measures and neither leverages the other.
  const double q = p.crit_exp();
  auto wq = [&](double s) { return std::pow(w_eval(p_, 1.0, s), q); };
  const GaussRule& glc = gauss_legendre(16);
  cap_w_ = 0.0;
  for (size_t i = 0; i < glc.x.size(); ++i) {
    const double s = 0.5 * opt.r_min * (1.0 + glc.x[i]);
    cap_w_ += 0.5 * opt.r_min * glc.w[i] * area * std::pow(s, n - 1) * wq(s);
  }
  cap_w_ /= wq(r_[0]);
  tail_w_ = 0.0;
  {
    double a = opt.r_max;
    for (int pl = 0; pl < 40 && a < 1e9; ++pl, a *= 2.0) {
      for (size_t i = 0; i < glc.x.size(); ++i) {
        const double s = a + 0.5 * a * (1.0 + glc.x[i]);
        tail_w_ += 0.5 * a * glc.w[i] * area * std::pow(s, n - 1) * wq(s);
      }
    }
    tail_w_ /= wq(r_[N - 1]);
  }

  w_mass_ = w_meas_;
  w_mass_(0) += cap_w_;
  w_mass_(N - 1) += tail_w_;

  // Pairing: interior diagonal measure, plus ghost rows inside the cap so the
  // cap side of the pairing carries its (singular, cancelling) share, plus
  // the tail pairing on the last sample.
  Eigen::MatrixXd Braw = w_meas_.asDiagonal() * T_;
  {
    Eigen::VectorXd gcol = Eigen::VectorXd::Zero(N);
    const GaussRule& glg = gauss_legendre(8);
    for (size_t gi = 0; gi < glg.x.size(); ++gi) {
      const double sg = 0.5 * opt.r_min * (1.0 + glg.x[gi]);
      const double wqg =
          0.5 * opt.r_min * glg.w[gi] * area * std::pow(sg, n - 1);
      std::fill(rowbuf.begin(), rowbuf.end(), 0.0);
      assemble_row(sg, rowbuf.data());
      const double beta = wqg * w_eval(p_, 1.0, sg) / w_eval(p_, 1.0, r_[0]);
      for (int j = 0; j < N; ++j) gcol(j) += beta * rowbuf[j];
    }
    Braw.row(0) += gcol.transpose();
    // ghost pairing rows beyond r_max (log-spaced out to 64 r_max)
    Eigen::VectorXd tcol = Eigen::VectorXd::Zero(N);
    const double tau1 = std::log(64.0);
    for (size_t gi = 0; gi < glg.x.size(); ++gi) {
      const double tau = 0.5 * tau1 * (1.0 + glg.x[gi]);
      const double sg = opt.r_max * std::exp(tau);
      const double wqg = 0.5 * tau1 * glg.w[gi] * area * std::pow(sg, n);
      std::fill(rowbuf.begin(), rowbuf.end(), 0.0);
      assemble_row(sg, rowbuf.data());
      const double beta = wqg * w_eval(p_, 1.0, sg) / w_eval(p_, 1.0, r_[N - 1]);
      for (int j = 0; j < N; ++j) tcol(j) += beta * rowbuf[j];
    }
    Braw.row(N - 1) += tcol.transpose();
  }
  B_ = 0.5 * (Braw + Braw.transpose());
}

std::vector<double> TraceEnergy::bubble_trace(double eps) const {
  std::vector<double> u(r_.size());
  for (size_t i = 0; i < r_.size(); ++i) u[i] = w_eval(p_, eps, r_[i]);
  return u;
}

std::vector<double> TraceEnergy::gaussian_trace() const {
  std::vector<double> u(r_.size());
  for (size_t i = 0; i < r_.size(); ++i) u[i] = std::exp(-r_[i] * r_[i]);
  return u;
}

std::vector<double> TraceEnergy::plateau_trace() const {
  std::vector<double> u(r_.size());
  const double e = 0.5 * (p_.n() - 2.0 * p_.gamma());
  for (size_t i = 0; i < r_.size(); ++i)
    u[i] = std::pow(1.0 + std::pow(r_[i], 4.0), -0.5 * e);
  return u;
}

double TraceEnergy::mass(const std::vector<double>& u) const {
  const double q = p_.crit_exp();
  double m = 0.0;
  for (int i = 0; i < w_mass_.size(); ++i)
    m += w_mass_(i) * std::pow(std::fabs(u[i]), q);
  return m;
}

std::vector<double> TraceEnergy::mass_gradient(const std::vector<double>& u) const {
  const double q = p_.crit_exp();
  const int N = static_cast<int>(u.size());
  std::vector<double> g(N);
  for (int i = 0; i < N; ++i)
    g[i] = w_mass_(i) * q * std::pow(std::fabs(u[i]), q - 1.0) *
           (u[i] >= 0.0 ? 1.0 : -1.0);
  return g;
}

std::vector<double> TraceEnergy::normalize(const std::vector<double>& u) const {
  const double m = mass(u);
  if (!(m > 0.0)) throw std::invalid_argument("TraceEnergy: zero trace");
  const double s = std::pow(mass0_ / m, 1.0 / p_.crit_exp());
  std::vector<double> v(u);
  for (double& x : v) x *= s;
  return v;
}

double TraceEnergy::energy(const std::vector<double>& u) const {
  Eigen::Map<const Eigen::VectorXd> uv(u.data(), u.size());
  const double num = uv.dot(B_ * uv);
  return num / std::pow(mass(u), (p_.n() - 2.0 * p_.gamma()) / p_.n());
}

std::vector<double> TraceEnergy::gradient(const std::vector<double>& u) const {
  const int N = static_cast<int>(u.size());
  Eigen::Map<const Eigen::VectorXd> uv(u.data(), N);
  const double s = (p_.n() - 2.0 * p_.gamma()) / p_.n();
  const double M = mass(u);
  const double num = uv.dot(B_ * uv);
  Eigen::VectorXd gnum = 2.0 * (B_ * uv);
  const std::vector<double> dM = mass_gradient(u);
  std::vector<double> grad(N);
  for (int i = 0; i < N; ++i)
    grad[i] = gnum(i) * std::pow(M, -s) - num * s * std::pow(M, -s - 1.0) * dM[i];
  return grad;
}

double TraceEnergy::projected_grad_norm(const std::vector<double>& u,
                                        const std::vector<double>& grad,
                                        std::vector<double>* direction) const {
  const int N = static_cast<int>(u.size());
  const double q = p_.crit_exp();
  const double h = std::log(r_[1] / r_[0]);
  // gradient density, constraint normal, and the dilation zero mode
  // d = e u + r u' (the quotient is exactly dilation invariant, so this
  // direction carries no information and is removed from the descent)
  std::vector<double> gd(N), m(N), dil(N);
  const double e = 0.5 * (p_.n() - 2.0 * p_.gamma());
  for (int i = 0; i < N; ++i) {
    gd[i] = grad[i] / w_mass_(i);
    m[i] = std::pow(std::fabs(u[i]), q - 1.0);
    const int lo = std::clamp(i - 2, 0, N - 5);
    double du = 0.0;
    static const double c5[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
    for (int k = 0; k < 5; ++k) du += c5[k] * u[lo + k];
    if (lo != i - 2) {  // one-sided fallback near the ends
      du = i == 0 ? u[1] - u[0] : (i == N - 1 ? u[N - 1] - u[N - 2] : du);
    }
    dil[i] = e * u[i] + du / h;  // r u' = du/dt
  }
  auto ip = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (int i = 0; i < N; ++i) acc += w_mass_(i) * a[i] * b[i];
    return acc;
  };
  // Gram-Schmidt the two removed directions, then project
  const double mm = ip(m, m);
  std::vector<double> d2(dil);
  const double dm = ip(dil, m) / mm;
  for (int i = 0; i < N; ++i) d2[i] -= dm * m[i];
  const double dd = ip(d2, d2) + 1e-300;
  const double gm = ip(gd, m) / mm;
  for (int i = 0; i < N; ++i) gd[i] -= gm * m[i];
  const double gdil = ip(gd, d2) / dd;
  for (int i = 0; i < N; ++i) gd[i] -= gdil * d2[i];
  if (direction) *direction = gd;
  return std::sqrt(ip(gd, gd));
}

std::vector<double> TraceEnergy::fractional_laplacian(const std::vector<double>& u) const {
  Eigen::Map<const Eigen::VectorXd> uv(u.data(), u.size());
  Eigen::VectorXd t = T_ * uv;
  return std::vector<double>(t.data(), t.data() + t.size());
}

std::vector<double> TraceEnergy::rescale_to_gauge(const std::vector<double>& u) const {
  // The quotient is dilation invariant; fix the scale gauge by pinning the
  // half-height radius to 1 so descent cannot drift along the scale valley.
  const int N = static_cast<int>(u.size());
  const double u0 = u[0];
  int ih = 0;
  while (ih < N && u[ih] > 0.5 * u0) ++ih;
  if (ih == 0 || ih >= N) return u;
  const double frac = (0.5 * u0 - u[ih - 1]) / (u[ih] - u[ih - 1]);
  const double rh = r_[ih - 1] * std::pow(r_[ih] / r_[ih - 1], frac);
  const double lam = rh;  // target half-height radius 1
  if (std::fabs(std::log(lam)) < 0.02) return u;
  const double e = 0.5 * (p_.n() - 2.0 * p_.gamma());
  const double t0 = std::log(r_[0]);
  const double h = std::log(r_[1] / r_[0]);
  const double shift = std::log(lam) / h;
  std::vector<double> v(N);
  const double amp = std::pow(lam, e);
  for (int i = 0; i < N; ++i) {
    const double pos = i + shift;
    if (pos <= 0.0) {
      // bubble-shaped continuation below the grid
      const double s = std::exp(t0 + pos * h);
      v[i] = amp * u[0] * w_eval(p_, 1.0, s) / w_eval(p_, 1.0, r_[0]);
    } else if (pos >= N - 1.0) {
      const double s = std::exp(t0 + pos * h);
      v[i] = amp * u[N - 1] * w_eval(p_, 1.0, s) / w_eval(p_, 1.0, r_[N - 1]);
    } else {
      int lo6 = std::clamp(static_cast<int>(std::floor(pos)) - 2, 0, N - 6);
      const double sloc = pos - lo6;
      double prod[7], suf[7];
      prod[0] = 1.0;
      for (int m = 0; m < 6; ++m) prod[m + 1] = prod[m] * (sloc - m);
      suf[6] = 1.0;
      for (int m = 5; m >= 0; --m) suf[m] = suf[m + 1] * (sloc - m);
      static const double den6[6] = {-120, 24, -12, 12, -24, 120};
      double acc = 0.0;
      for (int m = 0; m < 6; ++m) acc += u[lo6 + m] * prod[m] * suf[m + 1] / den6[m];
      v[i] = amp * acc;
    }
    if (v[i] < 0.0) v[i] = 0.0;
  }
  return v;
}

MinimizerState minimize(TraceEnergy& f, std::vector<double> init, int max_iter,
                        double tol) {
  bool nonzero = false;
  for (double v : init)
    if (v != 0.0) nonzero = true;
  if (!nonzero) throw std::invalid_argument("minimize: init must be nonzero");
  for (double v : init)
    if (v < 0.0) throw std::invalid_argument("minimize: init must be nonnegative");

  MinimizerState st;
  std::vector<double> u = f.normalize(f.rescale_to_gauge(init));
  double E = f.energy(u);
  double step = 0.1;
  std::vector<double> prev_u, prev_dir;
  for (st.iteration = 0; st.iteration < max_iter; ++st.iteration) {
    const std::vector<double> grad = f.gradient(u);
    std::vector<double> dir;
    st.grad_norm = f.projected_grad_norm(u, grad, &dir);
    if (st.grad_norm <= tol) break;
    if (!prev_u.empty()) {
      // Barzilai-Borwein seed for the backtracking search
      double sy = 0.0, yy = 0.0;
      for (size_t i = 0; i < u.size(); ++i) {
        const double si = u[i] - prev_u[i];
        const double yi = dir[i] - prev_dir[i];
        sy += si * yi;
        yy += yi * yi;
      }
      if (yy > 0.0 && sy < 0.0) step = std::min(4.0, std::fabs(sy) / yy);
    }
    prev_u = u;
    prev_dir = dir;

    // backtracking line search on the projected density direction
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      std::vector<double> trial(u.size());
      bool clamped = false;
      for (size_t i = 0; i < u.size(); ++i) {
        trial[i] = u[i] - step * dir[i];
        if (trial[i] < 0.0) {
          trial[i] = 0.0;
          clamped = true;
        }
      }
      double Mt = 0.0;
      for (double v : trial) Mt += v;
      if (Mt > 0.0) {
        trial = f.normalize(trial);
        const double Et = f.energy(trial);
        if (Et < E - 1e-12 * std::fabs(E)) {
          u = trial;
          E = Et;
          st.clamped = st.clamped || clamped;
          accepted = true;
          step *= 1.6;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      st.stalled = true;
      break;
    }
    // re-gauge the accepted iterate when the move is energy-harmless
    std::vector<double> regauged = f.normalize(f.rescale_to_gauge(u));
    const double E2 = f.energy(regauged);
    if (E2 < E + 1e-9 * std::fabs(E)) {
      u = std::move(regauged);
      E = E2;
    }
  }
  st.trace = u;
  st.energy = E;
  return st;
}

double bubble_match_deviation(const TraceEnergy& f, const std::vector<double>& u) {
  const auto& r = f.r_grid();
  const ParamPoint& p = f.param();
  const double u0 = u.front();
  // half-height radius by linear scan + local interpolation
  size_t ih = 0;
  while (ih < u.size() && u[ih] > 0.5 * u0) ++ih;
  if (ih == 0 || ih >= u.size()) return 1e9;
  const double frac = (0.5 * u0 - u[ih - 1]) / (u[ih] - u[ih - 1]);
  const double rh = r[ih - 1] + frac * (r[ih] - r[ih - 1]);
  // for the bubble, u(rh)/u(0) = ((eps^2)/(eps^2+rh^2))^{e} = 1/2
  const double e = 0.5 * (p.n() - 2.0 * p.gamma());
  const double ratio = std::pow(2.0, 1.0 / e) - 1.0;  // rh^2/eps^2
  const double eps_fit = rh / std::sqrt(ratio);
  const double amp = u0 / w_eval(p, eps_fit, 0.0);
  double worst = 0.0;
  for (size_t i = 0; i < r.size() && r[i] <= 4.0 * rh; ++i) {
    const double ref = amp * w_eval(p, eps_fit, r[i]);
    worst = std::max(worst, std::fabs(u[i] / ref - 1.0));
  }
  return worst;
}

}  // namespace fracyam
