#include "fracyam/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "fracyam/gamma.hpp"
#include "fracyam/quadrature.hpp"

namespace fracyam {

namespace {

ConstantSet compute(const ParamPoint& p) {
  const double g = p.gamma();
  const int n = p.n();
  ConstantSet c{};
  c.d_gamma = std::pow(2.0, 2.0 * g) * gamma_fn(g) / gamma_fn(-g);
  c.kappa_gamma = (g < 1.0) ? -c.d_gamma / (2.0 * g)
                            : c.d_gamma / (8.0 * g * (g - 1.0));
  c.p_n_gamma = gamma_fn(0.5 * (n + 2.0 * g)) /
                (std::pow(M_PI, 0.5 * n) * gamma_fn(g));
  c.S_n_gamma = c.kappa_gamma * gamma_fn(0.5 * (n - 2.0 * g)) /
                gamma_fn(0.5 * (n + 2.0 * g)) *
                std::pow(sphere_area(n), -2.0 * g / n);
  c.Y_sphere = c.kappa_gamma / c.S_n_gamma;
  c.alpha_n_gamma =
      std::pow(c.Y_sphere, (n - 2.0 * g) / (4.0 * g)) *
      std::pow(std::pow(2.0, n - 1) * std::pow(M_PI, -0.5 * (n + 1)) *
                   gamma_fn(0.5 * (n + 1)),
               (n - 2.0 * g) / (2.0 * n));
  return c;
}

}  // namespace

const ConstantSet& constants(const ParamPoint& p) {
  static std::map<std::pair<int, double>, ConstantSet> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p.n(), p.gamma());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute(p)).first;
  return it->second;
}

double poisson_normalization_check(const ParamPoint& p, double xN) {
  if (!(xN > 0.0)) throw std::invalid_argument("poisson_normalization_check: xN <= 0");
  const ConstantSet& c = constants(p);
  const double expo = -0.5 * (p.n() + 2.0 * p.gamma());
  const double x2g = std::pow(xN, 2.0 * p.gamma());
  QuadratureSpec spec(Region::Boundary, -1.0, 0.0);
  spec.feature_scale = xN;
  spec.rel_tol = 1e-11;
  spec.abs_tol = 1e-13;
  spec.decay_exp = p.n() + 2.0 * p.gamma();
  auto f = [&](double s, double) {
    return c.p_n_gamma * x2g * std::pow(s * s + xN * xN, expo);
  };
  return integrate_radial(f, p.n(), spec).value;
}

}  // namespace fracyam
