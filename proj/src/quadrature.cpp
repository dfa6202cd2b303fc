#include "fracyam/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracyam/gamma.hpp"
#include "fracyam/gauss.hpp"
#include "fracyam/rng.hpp"

namespace fracyam {

namespace {

struct EvalCounter {
  std::int64_t n = 0;
};

// Inner integral over x in [0, X] of f(r,x) x^m dx: Gauss-Jacobi panel at the
// boundary, geometric Gauss-Legendre panels above. `split` doubles panels.
double inner_x(const Integrand2D& f, double r, double X, double m, int split,
               double feature, EvalCounter& ev) {
  if (X <= 0.0) return 0.0;
  const int nj = 12 * split > 24 ? 24 : 12 * split;
  // the weight-absorbing panel stays at the integrand's feature scale; the
  // geometric panels above it track any ball radius
  const double h0 = std::min(X, 0.5 * feature);
  double sum = 0.0;
  GaussRule jac = jacobi_on_interval(nj, m, h0);
  for (size_t i = 0; i < jac.x.size(); ++i) {
    sum += jac.w[i] * f(r, jac.x[i]);
    ++ev.n;
  }
  std::vector<double> bp;
  add_geometric(bp, h0, X, 2.0);
  bp = merge_breakpoints(bp, h0, X);
  const GaussRule& gl = gauss_legendre(12);
  for (size_t p = 0; p + 1 < bp.size(); ++p) {
    const int sub = split;
    const double w = (bp[p + 1] - bp[p]) / sub;
    for (int s = 0; s < sub; ++s) {
      const double a = bp[p] + s * w;
      for (size_t i = 0; i < gl.x.size(); ++i) {
        const double x = a + 0.5 * w * (1.0 + gl.x[i]);
        sum += 0.5 * w * gl.w[i] * f(r, x) * std::pow(x, m);
        ++ev.n;
      }
    }
  }
  return sum;
}

double half_ball_pass(const Integrand2D& f, int n, const QuadratureSpec& spec,
                      double R, int split, EvalCounter& ev) {
  // integrate in r = R sin(phi): the rim Jacobian sqrt(R^2 - r^2) = R cos(phi)
  // becomes polynomial, so panels converge at full order
  std::vector<double> bp;
  const double lo = std::min(spec.feature_scale / 64.0, R / 64.0);
  bp.push_back(0.0);
  add_geometric(bp, lo, R, 2.0);
  bp = merge_breakpoints(bp, 0.0, R);
  std::vector<double> phib(bp.size());
  for (size_t i = 0; i < bp.size(); ++i)
    phib[i] = std::asin(std::min(1.0, bp[i] / R));
  const GaussRule& gl = gauss_legendre(12);
  double total = 0.0;
  for (size_t p = 0; p + 1 < phib.size(); ++p) {
    const int sub = split;
    const double w = (phib[p + 1] - phib[p]) / sub;
    for (int s = 0; s < sub; ++s) {
      const double a = phib[p] + s * w;
      for (size_t i = 0; i < gl.x.size(); ++i) {
        const double phi = a + 0.5 * w * (1.0 + gl.x[i]);
        const double r = R * std::sin(phi);
        const double X = R * std::cos(phi);
        const double inner =
            inner_x(f, r, X, spec.weight_exp, split, spec.feature_scale, ev);
        total += 0.5 * w * gl.w[i] * inner * std::pow(r, n - 1) * X;
      }
    }
  }
  return total * sphere_area(n - 1);
}

double boundary_pass(const Integrand2D& f, int n, double R, double fs, int split,
                     EvalCounter& ev) {
  std::vector<double> bp;
  bp.push_back(0.0);
  add_geometric(bp, std::min(fs / 64.0, R / 64.0), R, 2.0);
  bp = merge_breakpoints(bp, 0.0, R);
  const GaussRule& gl = gauss_legendre(12);
  double total = 0.0;
  for (size_t p = 0; p + 1 < bp.size(); ++p) {
    const int sub = split;
    const double w = (bp[p + 1] - bp[p]) / sub;
    for (int s = 0; s < sub; ++s) {
      const double a = bp[p] + s * w;
      for (size_t i = 0; i < gl.x.size(); ++i) {
        const double r = a + 0.5 * w * (1.0 + gl.x[i]);
        total += 0.5 * w * gl.w[i] * f(r, 0.0) * std::pow(r, n - 1);
        ++ev.n;
      }
    }
  }
  return total * sphere_area(n - 1);
}

IntegralResult refine_until(const std::function<double(int, EvalCounter&)>& pass,
                            const QuadratureSpec& spec) {
  EvalCounter ev;
  IntegralResult res;
  double prev = pass(1, ev);
  for (int lvl = 1; lvl <= spec.max_refine; ++lvl) {
    const double cur = pass(1 << lvl, ev);
    const double err = std::fabs(cur - prev);
    res.value = cur;
    res.err_estimate = err;
    res.evaluations = ev.n;
    if (err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(cur))) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  throw QuadratureError("integrate_radial: refinement budget exhausted", res);
}

}  // namespace

IntegralResult integrate_radial(const Integrand2D& f, int n, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 2) throw std::invalid_argument("integrate_radial: n must be >= 2");

  if (spec.region == Region::HalfBall) {
    return refine_until(
        [&](int split, EvalCounter& ev) {
          return half_ball_pass(f, n, spec, spec.radius, split, ev);
        },
        spec);
  }

  if (spec.region == Region::Boundary) {
    if (spec.radius > 0.0) {
      return refine_until(
          [&](int split, EvalCounter& ev) {
            return boundary_pass(f, n, spec.radius, spec.feature_scale, split, ev);
          },
          spec);
    }
    // Full boundary: grow the disc until the increment settles; when a decay
    // exponent is declared, add the analytic power tail each round.
    EvalCounter ev;
    double R = 64.0 * spec.feature_scale;
    IntegralResult res;
    double prev = 0.0;
    for (int k = 0; k < 8; ++k) {
      QuadratureSpec sub = spec;
      sub.radius = R;
      IntegralResult part = refine_until(
          [&](int split, EvalCounter& e) {
            return boundary_pass(f, n, R, spec.feature_scale, split, e);
          },
          sub);
      if (spec.decay_exp > n) {
        part.value += sphere_area(n - 1) * f(R, 0.0) * std::pow(R, n) /
                      (spec.decay_exp - n);
      }
      res = part;
      res.evaluations += ev.n;
      if (k > 0 && std::fabs(part.value - prev) <=
                       std::max(spec.abs_tol, spec.rel_tol * std::fabs(part.value))) {
        res.err_estimate =
            std::max(res.err_estimate, std::fabs(part.value - prev));
        res.converged = true;
        return res;
      }
      prev = part.value;
      ev.n = res.evaluations;
      R *= 4.0;
    }
    throw QuadratureError("integrate_radial: boundary tail did not settle", res);
  }

  // HalfSpace: grow the half-ball until the increment is below tolerance.
  EvalCounter ev;
  double R = 64.0 * spec.feature_scale;
  IntegralResult res;
  double prev = 0.0;
  for (int k = 0; k < 8; ++k) {
    QuadratureSpec sub = spec;
    sub.region = Region::HalfBall;
    sub.radius = R;
    IntegralResult part = integrate_radial(f, n, sub);
    res = part;
    res.evaluations += ev.n;
    if (k > 0 && std::fabs(part.value - prev) <=
                     std::max(spec.abs_tol, spec.rel_tol * std::fabs(part.value))) {
      res.err_estimate = std::max(res.err_estimate, std::fabs(part.value - prev));
      res.converged = true;
      return res;
    }
    prev = part.value;
    ev.n = res.evaluations;
    R *= 4.0;
  }
  throw QuadratureError("integrate_radial: half-space tail did not settle", res);
}

IntegralResult mc_oracle(const Integrand2D& f, int n, const QuadratureSpec& spec,
                         std::int64_t n_samples, std::uint64_t seed) {
  spec.validate();
  if (spec.region == Region::HalfSpace)
    throw std::invalid_argument("mc_oracle: half-space sampling not supported");
  if (n_samples < 2) throw std::invalid_argument("mc_oracle: need >= 2 samples");

  Rng rng(seed);
  const double m = spec.weight_exp;
  const double R = spec.radius;
  const int N = n + 1;

  double mass;  // integral of the importance density's unnormalized weight
  if (spec.region == Region::HalfBall) {
    // Z = |S^{n-1}| R^{N+m}/(N+m) * (1/2) B(n/2, (m+1)/2)
    mass = sphere_area(n - 1) * std::pow(R, N + m) / (N + m) * 0.5 *
           gamma_fn(0.5 * n) * gamma_fn(0.5 * (m + 1.0)) /
           gamma_fn(0.5 * (n + m + 1.0));
  } else {
    if (R <= 0.0)
      throw std::invalid_argument("mc_oracle: full boundary not supported");
    mass = sphere_area(n - 1) * std::pow(R, n) / n;
  }

  double sum = 0.0, sum2 = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    double r, x;
    if (spec.region == Region::HalfBall) {
      const double rho = R * std::pow(rng.uniform(), 1.0 / (N + m));
      const double t = rng.beta_dist(0.5 * (m + 1.0), 0.5 * n);  // t = cos^2 psi
      x = rho * std::sqrt(t);
      r = rho * std::sqrt(1.0 - t);
    } else {
      r = R * std::pow(rng.uniform(), 1.0 / n);
      x = 0.0;
    }
    const double v = f(r, x);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n_samples;
  const double var = std::max(0.0, sum2 / n_samples - mean * mean);
  IntegralResult res;
  res.value = mass * mean;
  res.err_estimate = mass * std::sqrt(var / n_samples);
  res.evaluations = n_samples;
  res.converged = true;
  return res;
}

}  // namespace fracyam
