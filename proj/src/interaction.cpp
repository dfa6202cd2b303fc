#include "fracyam/interaction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fracyam/constants.hpp"
#include "fracyam/extension_source.hpp"
#include "fracyam/gamma.hpp"
#include "fracyam/gauss.hpp"

namespace fracyam {

double eps_ij(const BubblePair& pair) {
  const double q = pair.eps_i / pair.eps_j + pair.eps_j / pair.eps_i +
                   pair.d * pair.d / (pair.eps_i * pair.eps_j);
  return std::pow(q, 0.5 * (2.0 * pair.p.gamma() - pair.p.n()));
}

double boundary_two_center(const ParamPoint& p,
                           const std::function<double(double, double)>& F, double d,
                           const std::vector<double>& u_breaks, double u_max,
                           double peak_scale_j) {
  const int n = p.n();
  std::vector<double> bp = u_breaks;
  bp.push_back(0.0);
  if (d > 0.0 && d < u_max) {
    bp.push_back(d);
    for (double w = 0.5 * peak_scale_j; w < u_max; w *= 2.0) {
      bp.push_back(d - w);
      bp.push_back(d + w);
    }
  }
  bp = merge_breakpoints(bp, 0.0, u_max);

  const GaussRule& gl = gauss_legendre(12);
  const GaussRule& glb = gauss_legendre(10);
  double total = 0.0;
  for (size_t pnl = 0; pnl + 1 < bp.size(); ++pnl) {
    const double a = bp[pnl], w = bp[pnl + 1] - bp[pnl];
    for (size_t i = 0; i < gl.x.size(); ++i) {
      const double u = a + 0.5 * w * (1.0 + gl.x[i]);
      // beta panels, clustered toward the j-peak direction beta = 0
      const double bstar =
          d > 0.0 ? std::min(M_PI, std::max(peak_scale_j, std::fabs(u - d)) /
                                        std::max(d, 1e-300))
                  : M_PI;
      std::vector<double> bb;
      bb.push_back(0.0);
      if (bstar < 0.5 * M_PI) add_geometric(bb, bstar, M_PI, 2.0);
      bb = merge_breakpoints(bb, 0.0, M_PI);
      double inner = 0.0;
      for (size_t q = 0; q + 1 < bb.size(); ++q) {
        const double ba = bb[q], bw = bb[q + 1] - bb[q];
        for (size_t k = 0; k < glb.x.size(); ++k) {
          const double beta = ba + 0.5 * bw * (1.0 + glb.x[k]);
          const double rho_j =
              std::sqrt(std::max(0.0, u * u + d * d - 2.0 * u * d * std::cos(beta)));
          inner += 0.5 * bw * glb.w[k] * F(u, rho_j) *
                   std::pow(std::sin(beta), n - 2);
        }
      }
      total += 0.5 * w * gl.w[i] * inner * std::pow(u, n - 1);
    }
  }
  return total * sphere_area(n - 2);
}

namespace {

std::vector<double> pair_u_breaks(const BubblePair& pair) {
  std::vector<double> bp;
  add_geometric(bp, pair.eps_i / 16.0, 16.0 * pair.delta, 2.0);
  bp.push_back(pair.delta);
  bp.push_back(2.0 * pair.delta);
  return bp;
}

}  // namespace

double epsilon_ij(const BubblePair& pair, bool fast) {
  GluedSource vi(bubble_source(pair.p, 1.0, fast), pair.eps_i, pair.delta);
  GluedSource vj(bubble_source(pair.p, 1.0, fast), pair.eps_j, pair.delta);
  const double pe = pair.p.trace_exp();
  auto F = [&](double u, double rho_j) {
    return std::pow(vi.boundary(u), pe) * vj.boundary(rho_j);
  };
  const double u_max = 40.0 * std::max(pair.delta, pair.d);
  return boundary_two_center(pair.p, F, pair.d, pair_u_breaks(pair), u_max,
                             pair.eps_j);
}

namespace {

// annulus bulk pairing  kappa int D_i U_j x^{m0} dmu, reduced to (rho, th, beta)
double annulus_bulk(const BubblePair& pair, const GluedSource& Ui,
                    const GluedSource& Uj) {
  const ParamPoint& p = pair.p;
  const int n = p.n();
  const double m0 = p.m0();
  const double delta = pair.delta;

  const GaussRule& gl = gauss_legendre(12);
  const GaussRule& glb = gauss_legendre(10);

  // theta direction: [0, pi/2 - t0] Legendre, then Jacobi in t = pi/2 - th
  const double t0 = 0.4;
  GaussRule jac = jacobi_on_interval(16, m0, t0);

  double total = 0.0;
  std::vector<double> rho_bp;
  add_geometric(rho_bp, delta, 2.0 * delta, std::pow(2.0, 0.25));
  rho_bp = merge_breakpoints(rho_bp, delta, 2.0 * delta);

  auto beta_integral = [&](double rbar, double x, double wgt) {
    // integrate over beta in [0, pi] with the j-center direction at beta = 0
    const double bstar =
        pair.d > 0.0
            ? std::min(M_PI, std::max(pair.eps_j, std::fabs(rbar - pair.d)) /
                                 std::max(pair.d, 1e-300))
            : M_PI;
    std::vector<double> bb;
    bb.push_back(0.0);
    if (bstar < 0.5 * M_PI) add_geometric(bb, bstar, M_PI, 2.0);
    bb = merge_breakpoints(bb, 0.0, M_PI);
    const double Di = Ui.minus_L_typeI(rbar, x);
    if (Di == 0.0) return;
    double inner = 0.0;
    for (size_t q = 0; q + 1 < bb.size(); ++q) {
      const double ba = bb[q], bw = bb[q + 1] - bb[q];
      for (size_t k = 0; k < glb.x.size(); ++k) {
        const double beta = ba + 0.5 * bw * (1.0 + glb.x[k]);
        const double rj = std::sqrt(std::max(
            0.0, rbar * rbar + pair.d * pair.d - 2.0 * rbar * pair.d * std::cos(beta)));
        const double uj = Uj.fields(rj, x, kFieldW).W;
        inner += 0.5 * bw * glb.w[k] * uj * std::pow(std::sin(beta), n - 2);
      }
    }
    total += wgt * Di * inner;
  };

  for (size_t pnl = 0; pnl + 1 < rho_bp.size(); ++pnl) {
    const double a = rho_bp[pnl], w = rho_bp[pnl + 1] - rho_bp[pnl];
    for (size_t i = 0; i < gl.x.size(); ++i) {
      const double rho = a + 0.5 * w * (1.0 + gl.x[i]);
      const double wr = 0.5 * w * gl.w[i];
      // Legendre part of theta
      std::vector<double> tb;
      add_geometric(tb, 0.05, 0.5 * M_PI - t0, 2.0);
      tb = merge_breakpoints(tb, 0.0, 0.5 * M_PI - t0);
      for (size_t q = 0; q + 1 < tb.size(); ++q) {
        const double ta = tb[q], tw = tb[q + 1] - tb[q];
        for (size_t k = 0; k < gl.x.size(); ++k) {
          const double th = ta + 0.5 * tw * (1.0 + gl.x[k]);
          const double x = rho * std::cos(th), rbar = rho * std::sin(th);
          const double wgt = wr * 0.5 * tw * gl.w[k] * std::pow(x, m0) *
                             std::pow(rbar, n - 1) * rho;
          beta_integral(rbar, x, wgt);
        }
      }
      // Jacobi part near the boundary: th = pi/2 - t, weight (cos th)^{m0} = t^{m0} (sin t / t)^{m0}
      for (size_t k = 0; k < jac.x.size(); ++k) {
        const double t = jac.x[k];
        const double th = 0.5 * M_PI - t;
        const double x = rho * std::cos(th), rbar = rho * std::sin(th);
        const double corr = std::pow(std::sin(t) / t, m0) * std::pow(rho, m0);
        const double wgt = wr * jac.w[k] * corr * std::pow(rbar, n - 1) * rho;
        beta_integral(rbar, x, wgt);
      }
    }
  }
  return total * sphere_area(n - 2);
}

}  // namespace

double e_ij_flat(const BubblePair& pair, bool fast) {
  if (pair.p.regime() != Regime::TypeI)
    throw std::invalid_argument("e_ij_flat: TypeI only");
  GluedSource Ui(bubble_source(pair.p, 1.0, fast), pair.eps_i, pair.delta);
  GluedSource Uj(bubble_source(pair.p, 1.0, fast), pair.eps_j, pair.delta);
  const double pe = pair.p.trace_exp();
  const Cutoff& cut = Ui.cutoff();
  auto F = [&](double u, double rho_j) {
    const double chi = cut.chi(u);
    if (chi == 0.0) return 0.0;
    return chi * std::pow(w_eval(pair.p, pair.eps_i, u), pe) * Uj.boundary(rho_j);
  };
  const double term_boundary = boundary_two_center(
      pair.p, F, pair.d, pair_u_breaks(pair), 2.0 * pair.delta, pair.eps_j);
  const double term_bulk = annulus_bulk(pair, Ui, Uj);
  return term_boundary + constants(pair.p).kappa_gamma * term_bulk;
}

double e_self_flat(const ParamPoint& p, double eps, double delta, bool fast) {
  if (p.regime() != Regime::TypeI)
    throw std::invalid_argument("e_self_flat: TypeI only");
  GluedSource U(bubble_source(p, 1.0, fast), eps, delta);
  const int n = p.n();
  const double pe = p.trace_exp();
  const Cutoff& cut = U.cutoff();

  // boundary pairing, radial
  std::vector<double> bp;
  add_geometric(bp, eps / 32.0, 2.0 * delta, 2.0);
  bp.push_back(delta);
  bp = merge_breakpoints(bp, 0.0, 2.0 * delta);
  const GaussRule& gl = gauss_legendre(16);
  double bterm = 0.0;
  for (size_t pnl = 0; pnl + 1 < bp.size(); ++pnl) {
    const double a = bp[pnl], w = bp[pnl + 1] - bp[pnl];
    for (size_t i = 0; i < gl.x.size(); ++i) {
      const double u = a + 0.5 * w * (1.0 + gl.x[i]);
      bterm += 0.5 * w * gl.w[i] * cut.chi(u) * std::pow(w_eval(p, eps, u), pe) *
               U.boundary(u) * std::pow(u, n - 1);
    }
  }
  bterm *= sphere_area(n - 1);

  // annulus bulk, axisymmetric about the center
  const double m0 = p.m0();
  const double t0 = 0.4;
  GaussRule jac = jacobi_on_interval(16, m0, t0);
  std::vector<double> rho_bp;
  add_geometric(rho_bp, delta, 2.0 * delta, std::pow(2.0, 0.25));
  rho_bp = merge_breakpoints(rho_bp, delta, 2.0 * delta);
  double bulk = 0.0;
  for (size_t pnl = 0; pnl + 1 < rho_bp.size(); ++pnl) {
    const double a = rho_bp[pnl], w = rho_bp[pnl + 1] - rho_bp[pnl];
    for (size_t i = 0; i < gl.x.size(); ++i) {
      const double rho = a + 0.5 * w * (1.0 + gl.x[i]);
      const double wr = 0.5 * w * gl.w[i];
      std::vector<double> tb;
      add_geometric(tb, 0.05, 0.5 * M_PI - t0, 2.0);
      tb = merge_breakpoints(tb, 0.0, 0.5 * M_PI - t0);
      auto add_point = [&](double th_x, double th_r, double wgt) {
        const double Di = U.minus_L_typeI(th_r, th_x);
        if (Di == 0.0) return;
        bulk += wgt * Di * U.fields(th_r, th_x, kFieldW).W;
      };
      for (size_t q = 0; q + 1 < tb.size(); ++q) {
        const double ta = tb[q], tw = tb[q + 1] - tb[q];
        for (size_t k = 0; k < gl.x.size(); ++k) {
          const double th = ta + 0.5 * tw * (1.0 + gl.x[k]);
          const double x = rho * std::cos(th), rbar = rho * std::sin(th);
          add_point(x, rbar,
                    wr * 0.5 * tw * gl.w[k] * std::pow(x, m0) *
                        std::pow(rbar, n - 1) * rho);
        }
      }
      for (size_t k = 0; k < jac.x.size(); ++k) {
        const double t = jac.x[k];
        const double corr = std::pow(std::sin(t) / t, m0) * std::pow(rho, m0);
        add_point(rho * std::sin(t), rho * std::cos(t),
                  wr * jac.w[k] * corr * std::pow(rho * std::cos(t), n - 1) * rho);
      }
    }
  }
  bulk *= sphere_area(n - 1);
  return bterm + constants(p).kappa_gamma * bulk;
}

double bulk_cross_term(const BubblePair& pair, bool fast) {
  const ParamPoint& p = pair.p;
  const int n = p.n();
  const double m = p.regime() == Regime::TypeI ? p.m0() : p.m1();
  auto Wi = bubble_source(p, pair.eps_i, fast);
  GluedSource Uj(bubble_source(p, 1.0, fast), pair.eps_j, pair.delta);
  Cutoff cut(pair.delta);

  const GaussRule& gl = gauss_legendre(12);
  const GaussRule& glb = gauss_legendre(10);
  const double t0 = 0.4;
  GaussRule jac = jacobi_on_interval(16, m, t0);

  std::vector<double> rho_bp;
  add_geometric(rho_bp, pair.eps_i / 8.0, 2.0 * pair.delta, 2.0);
  rho_bp.push_back(pair.delta);
  rho_bp = merge_breakpoints(rho_bp, 0.0, 2.0 * pair.delta);

  double total = 0.0;
  auto add_point = [&](double rbar, double x, double wgt) {
    const double chiW = cut.chi(std::sqrt(rbar * rbar + x * x)) *
                        Wi->fields(rbar, x, kFieldW).W;
    if (chiW == 0.0) return;
    const double bstar =
        pair.d > 0.0
            ? std::min(M_PI, std::max(pair.eps_j, std::fabs(rbar - pair.d)) /
                                 std::max(pair.d, 1e-300))
            : M_PI;
    std::vector<double> bb;
    bb.push_back(0.0);
    if (bstar < 0.5 * M_PI) add_geometric(bb, bstar, M_PI, 2.0);
    bb = merge_breakpoints(bb, 0.0, M_PI);
    double inner = 0.0;
    for (size_t q = 0; q + 1 < bb.size(); ++q) {
      const double ba = bb[q], bw = bb[q + 1] - bb[q];
      for (size_t k = 0; k < glb.x.size(); ++k) {
        const double beta = ba + 0.5 * bw * (1.0 + glb.x[k]);
        const double rj = std::sqrt(std::max(
            0.0, rbar * rbar + pair.d * pair.d - 2.0 * rbar * pair.d * std::cos(beta)));
        inner += 0.5 * bw * glb.w[k] * Uj.fields(rj, x, kFieldW).W *
                 std::pow(std::sin(beta), n - 2);
      }
    }
    total += wgt * chiW * inner;
  };

  for (size_t pnl = 0; pnl + 1 < rho_bp.size(); ++pnl) {
    const double a = rho_bp[pnl], w = rho_bp[pnl + 1] - rho_bp[pnl];
    for (size_t i = 0; i < gl.x.size(); ++i) {
      const double rho = a + 0.5 * w * (1.0 + gl.x[i]);
      const double wr = 0.5 * w * gl.w[i];
      std::vector<double> tb;
      add_geometric(tb, 0.05, 0.5 * M_PI - t0, 2.0);
      tb = merge_breakpoints(tb, 0.0, 0.5 * M_PI - t0);
      for (size_t q = 0; q + 1 < tb.size(); ++q) {
        const double ta = tb[q], tw = tb[q + 1] - tb[q];
        for (size_t k = 0; k < gl.x.size(); ++k) {
          const double th = ta + 0.5 * tw * (1.0 + gl.x[k]);
          add_point(rho * std::sin(th), rho * std::cos(th),
                    wr * 0.5 * tw * gl.w[k] * std::pow(rho * std::cos(th), m) *
                        std::pow(rho * std::sin(th), n - 1) * rho);
        }
      }
      for (size_t k = 0; k < jac.x.size(); ++k) {
        const double t = jac.x[k];
        const double corr = std::pow(std::sin(t) / t, m) * std::pow(rho, m);
        add_point(rho * std::cos(t), rho * std::sin(t),
                  wr * jac.w[k] * corr * std::pow(rho * std::cos(t), n - 1) * rho);
      }
    }
  }
  return total * sphere_area(n - 2);
}

double boundary_remainder(const BubblePair& pair, bool fast) {
  GluedSource vi(bubble_source(pair.p, 1.0, fast), pair.eps_i, pair.delta);
  GluedSource vj(bubble_source(pair.p, 1.0, fast), pair.eps_j, pair.delta);
  Cutoff cut(pair.delta);
  const double pe = pair.p.trace_exp();
  auto F = [&](double u, double rho_j) {
    const double vipe = std::pow(vi.boundary(u), pe);
    const double chiw = cut.chi(u) * std::pow(w_eval(pair.p, pair.eps_i, u), pe);
    return std::fabs(vipe - chiw) * vj.boundary(rho_j);
  };
  const double u_max = 40.0 * std::max(pair.delta, pair.d);
  return boundary_two_center(pair.p, F, pair.d, pair_u_breaks(pair), u_max,
                             pair.eps_j);
}

HigherExponentResult higher_exponent_check(const ParamPoint& p, double alpha,
                                           double beta, double d, double delta,
                                           const std::vector<double>& eps_list,
                                           bool fast) {
  const double q = p.crit_exp();
  if (std::fabs(alpha + beta - q) > 1e-9)
    throw std::invalid_argument("higher_exponent_check: need alpha + beta = 2n/(n-2g)");
  const double balanced = 0.5 * q;  // n/(n-2g)
  const bool item_ii = std::fabs(alpha - balanced) < 1e-9;
  if (!item_ii && !(alpha > balanced && beta > 0.0 && beta < balanced))
    throw std::invalid_argument("higher_exponent_check: exponent constraints violated");

  HigherExponentResult out;
  out.beta = item_ii ? balanced : beta;
  for (double eps : eps_list) {
    BubblePair pair(p, eps, eps, d, delta);
    GluedSource vi(bubble_source(p, 1.0, fast), eps, delta);
    GluedSource vj(bubble_source(p, 1.0, fast), eps, delta);
    auto F = [&](double u, double rho_j) {
      return std::pow(vi.boundary(u), alpha) * std::pow(vj.boundary(rho_j), beta);
    };
    const double u_max = 40.0 * std::max(delta, d);
    out.values.push_back(boundary_two_center(p, F, d, pair_u_breaks(pair), u_max, eps));
    out.separations.push_back(eps_ij(pair));
  }

  const int m = static_cast<int>(eps_list.size());
  Eigen::MatrixXd X(m, 2);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    X(i, 0) = std::log(out.separations[i]);
    X(i, 1) = 1.0;
    y(i) = std::log(std::fabs(out.values[i]));
  }
  Eigen::Vector2d c = (X.transpose() * X).ldlt().solve(X.transpose() * y);
  out.slope = c(0);

  if (item_ii) {
    // ratio I / eps_ij^{n/(n-2g)} should grow linearly in |log eps_ij|
    const double r0 = out.values.front() / std::pow(out.separations.front(), balanced);
    const double r1 = out.values.back() / std::pow(out.separations.back(), balanced);
    out.log_factor = r1 > 1.05 * r0;
    out.pass = out.slope >= balanced - 0.05 && out.log_factor;
  } else {
    out.pass = out.slope >= beta - 0.05;
  }
  return out;
}

BubbleConfig circle_config(const ParamPoint& p, int count, double circle_radius,
                           double eps, double delta) {
  BubbleConfig cfg{p, {}, {}, eps, delta};
  for (int i = 0; i < count; ++i) {
    const double phi = 2.0 * M_PI * i / count;
    cfg.centers.push_back({circle_radius * std::cos(phi), circle_radius * std::sin(phi)});
    cfg.weights.push_back(1.0);
  }
  return cfg;
}

namespace {

struct TripleCell {
  std::array<double, 3> lo, hi;
};

double cell_rule(const std::function<double(double, double, double)>& f,
                 const TripleCell& c, int npts) {
  const GaussRule& gl = gauss_legendre(npts);
  double acc = 0.0;
  for (int a = 0; a < npts; ++a)
    for (int b = 0; b < npts; ++b)
      for (int d = 0; d < npts; ++d) {
        const double x = c.lo[0] + 0.5 * (c.hi[0] - c.lo[0]) * (1.0 + gl.x[a]);
        const double y = c.lo[1] + 0.5 * (c.hi[1] - c.lo[1]) * (1.0 + gl.x[b]);
        const double z = c.lo[2] + 0.5 * (c.hi[2] - c.lo[2]) * (1.0 + gl.x[d]);
        acc += gl.w[a] * gl.w[b] * gl.w[d] * f(x, y, z);
      }
  return acc * 0.125 * (c.hi[0] - c.lo[0]) * (c.hi[1] - c.lo[1]) *
         (c.hi[2] - c.lo[2]);
}

}  // namespace

double triple_boundary_integral(const std::function<double(double)>& v1,
                                const std::function<double(double)>& v2,
                                const std::function<double(double)>& v3,
                                const std::array<std::array<double, 3>, 3>& centers,
                                double box_half, double peak_scale, double rel_tol) {
  auto f = [&](double x, double y, double z) {
    auto dist = [&](int i) {
      const double dx = x - centers[i][0], dy = y - centers[i][1],
                   dz = z - centers[i][2];
      return std::sqrt(dx * dx + dy * dy + dz * dz);
    };
    return v1(dist(0)) * v2(dist(1)) * v3(dist(2));
  };

  TripleCell root{{-box_half, -box_half, -box_half}, {box_half, box_half, box_half}};
  const double vol_root = 8.0 * box_half * box_half * box_half;
  // rough scale sets the absolute error budget, distributed by cell volume
  const double rough = std::fabs(cell_rule(f, root, 5)) + 1e-300;
  const double abs_budget = rel_tol * rough;

  double total = 0.0;
  long cells = 0;
  std::function<void(const TripleCell&, int)> walk = [&](const TripleCell& c,
                                                         int depth) {
    ++cells;
    const double size = c.hi[0] - c.lo[0];
    const double vol = size * (c.hi[1] - c.lo[1]) * (c.hi[2] - c.lo[2]);
    bool contains_center = false;
    for (const auto& ctr : centers) {
      bool inside = true;
      for (int k = 0; k < 3; ++k)
        if (ctr[k] < c.lo[k] || ctr[k] > c.hi[k]) inside = false;
      if (inside) contains_center = true;
    }
    const double i4 = cell_rule(f, c, 4);
    const bool force = contains_center && size > 2.0 * peak_scale;
    if (!force) {
      const double i2 = cell_rule(f, c, 2);
      const double cell_err = std::fabs(i4 - i2);
      const double allowed = abs_budget * vol / vol_root;
      if (cell_err <= allowed || depth >= 22 || cells > 300000) {
        total += i4;
        return;
      }
    }
    const std::array<double, 3> mid = {0.5 * (c.lo[0] + c.hi[0]),
                                       0.5 * (c.lo[1] + c.hi[1]),
                                       0.5 * (c.lo[2] + c.hi[2])};
    for (int oct = 0; oct < 8; ++oct) {
      TripleCell sub;
      for (int k = 0; k < 3; ++k) {
        if (oct & (1 << k)) {
          sub.lo[k] = mid[k];
          sub.hi[k] = c.hi[k];
        } else {
          sub.lo[k] = c.lo[k];
          sub.hi[k] = mid[k];
        }
      }
      walk(sub, depth + 1);
    }
  };
  walk(root, 0);
  return total;
}

double barycenter_landscape(const BubbleConfig& config, bool fast) {
  const ParamPoint& p = config.p;
  const double q = p.crit_exp();
  if (std::fabs(q - 3.0) > 1e-9)
    throw std::invalid_argument(
        "barycenter_landscape: needs boundary exponent 3 (n = 6 gamma)");
  const int np = static_cast<int>(config.centers.size());
  if (np < 1 || config.weights.size() != config.centers.size())
    throw std::invalid_argument("barycenter_landscape: bad config");
  for (double a : config.weights)
    if (!(a >= 0.0)) throw std::invalid_argument("barycenter_landscape: weights >= 0");

  auto dist = [&](int i, int j) {
    const double dx = config.centers[i][0] - config.centers[j][0];
    const double dy = config.centers[i][1] - config.centers[j][1];
    return std::sqrt(dx * dx + dy * dy);
  };

  // numerator: self terms + pairwise bilinear terms (cache per distance)
  const double e_self = e_self_flat(p, config.eps, config.delta, fast);
  std::vector<std::vector<double>> eij(np, std::vector<double>(np, 0.0));
  std::vector<std::pair<double, double>> cache;
  for (int i = 0; i < np; ++i)
    for (int j = i + 1; j < np; ++j) {
      const double d = dist(i, j);
      bool found = false;
      double val = 0.0;
      for (auto& [dd, vv] : cache)
        if (std::fabs(dd - d) < 1e-12 * (1.0 + d)) {
          val = vv;
          found = true;
        }
      if (!found) {
        val = e_ij_flat(BubblePair(p, config.eps, config.eps, d, config.delta), fast);
        cache.emplace_back(d, val);
      }
      eij[i][j] = val;
    }
  double num = 0.0;
  for (int i = 0; i < np; ++i) num += config.weights[i] * config.weights[i] * e_self;
  for (int i = 0; i < np; ++i)
    for (int j = i + 1; j < np; ++j)
      num += 2.0 * config.weights[i] * config.weights[j] * eij[i][j];

  // denominator: exact multinomial expansion of (sum alpha_i v_i)^3
  GluedSource v(bubble_source(p, 1.0, fast), config.eps, config.delta);
  const double self_mass = boundary_mass(
      p, [&v](double r) { return v.boundary(r); }, 3.0, -1.0, config.eps);

  std::vector<std::pair<double, double>> pair_cache;  // d -> oint v^2(u) v(rho_j)
  auto pair_mass = [&](double d) {
    for (auto& [dd, vv] : pair_cache)
      if (std::fabs(dd - d) < 1e-12 * (1.0 + d)) return vv;
    auto F = [&](double u, double rho_j) {
      const double a = v.boundary(u);
      return a * a * v.boundary(rho_j);
    };
    std::vector<double> bp;
    add_geometric(bp, config.eps / 16.0, 16.0 * config.delta, 2.0);
    bp.push_back(config.delta);
    bp.push_back(2.0 * config.delta);
    const double u_max = 40.0 * std::max(config.delta, d);
    const double val = boundary_two_center(p, F, d, bp, u_max, config.eps);
    pair_cache.emplace_back(d, val);
    return val;
  };

  double mass = 0.0;
  for (int i = 0; i < np; ++i) mass += std::pow(config.weights[i], 3.0) * self_mass;
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j)
      if (i != j)
        mass += 3.0 * config.weights[i] * config.weights[i] * config.weights[j] *
                pair_mass(dist(i, j));
  if (np >= 3) {
    auto vb = [&](double r) { return v.boundary(r); };
    for (int i = 0; i < np; ++i)
      for (int j = i + 1; j < np; ++j)
        for (int k = j + 1; k < np; ++k) {
          std::array<std::array<double, 3>, 3> ctrs = {
              std::array<double, 3>{config.centers[i][0], config.centers[i][1], 0.0},
              std::array<double, 3>{config.centers[j][0], config.centers[j][1], 0.0},
              std::array<double, 3>{config.centers[k][0], config.centers[k][1], 0.0}};
          double span = 0.0;
          for (const auto& ctr : ctrs)
            span = std::max(span,
                            std::sqrt(ctr[0] * ctr[0] + ctr[1] * ctr[1]));
          const double L = span + 12.0 * config.delta;
          const double t = triple_boundary_integral(vb, vb, vb, ctrs, L,
                                                    config.eps, fast ? 3e-3 : 1e-3);
          mass += 6.0 * config.weights[i] * config.weights[j] * config.weights[k] * t;
        }
  }
  if (!(mass > 0.0))
    throw std::runtime_error("barycenter_landscape: vanishing denominator");
  return num / std::pow(mass, (p.n() - 2.0 * p.gamma()) / p.n());
}

LandscapeFit p_star_estimate(const ParamPoint& p, double circle_radius, double delta,
                             const std::vector<double>& eps_list,
                             const std::vector<int>& p_list, bool fast) {
  {
    std::vector<int> distinct(p_list);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2 || eps_list.size() < 2)
      throw std::invalid_argument(
          "p_star_estimate: need >= 2 distinct p values and >= 2 eps values");
  }
  const ConstantSet& c = constants(p);
  const double tg = 2.0 * p.gamma();
  LandscapeFit fit;
  std::vector<double> xi_col, pm1_col, y_col;
  for (int np : p_list) {
    for (double eps : eps_list) {
      BubbleConfig cfg = circle_config(p, np, circle_radius, eps, delta);
      const double E = barycenter_landscape(cfg, fast);
      fit.energies.push_back(E);
      const double y = E / (std::pow(double(np), tg / p.n()) * c.Y_sphere) - 1.0;
      const double xi = std::pow(eps, 0.5 * (p.n() - tg));
      xi_col.push_back(xi);
      pm1_col.push_back(np - 1.0);
      y_col.push_back(y);
    }
  }
  const int m = static_cast<int>(y_col.size());
  Eigen::MatrixXd X(m, 2);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    X(i, 0) = xi_col[i];
    X(i, 1) = -pm1_col[i] * xi_col[i];
    y(i) = y_col[i];
  }
  Eigen::Vector2d coef = (X.transpose() * X).ldlt().solve(X.transpose() * y);
  fit.C6 = coef(0);
  fit.C7 = coef(1);
  fit.fit_residual = (X * coef - y).norm() / (y.norm() + 1e-300);
  fit.p_star = fit.C7 > 0.0
                   ? static_cast<int>(std::floor(1.0 + fit.C6 / fit.C7)) + 1
                   : 0;
  return fit;
}

}  // namespace fracyam
