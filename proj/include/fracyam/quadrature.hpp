#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace fracyam {

enum class Region { HalfBall, HalfSpace, Boundary };

/// Weighted-integral request: integrate f(r, x_N) x_N^m over the region,
/// against the flat measure (the r^{n-1} |S^{n-1}| factor is supplied by the
/// integrator from the boundary dimension n).
struct QuadratureSpec {
  Region region = Region::HalfBall;
  double radius = 1.0;       // HalfBall / Boundary disc; <= 0 means full boundary
  double weight_exp = 0.0;   // m > -1
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_refine = 6;
  bool divergence_declared = false;
  double feature_scale = 1.0;  // scale of the integrand's features near 0
  double decay_exp = 0.0;      // |f| ~ rho^{-decay_exp} for large rho (0 = unknown)

  QuadratureSpec() = default;
  QuadratureSpec(Region reg, double R, double m) : region(reg), radius(R), weight_exp(m) {
    validate();
  }
  void validate() const {
    if (weight_exp <= -1.0)
      throw std::invalid_argument("QuadratureSpec: weight exponent must be > -1");
    if (rel_tol <= 0.0 || abs_tol <= 0.0)
      throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (region != Region::Boundary && radius <= 0.0 && region == Region::HalfBall)
      throw std::invalid_argument("QuadratureSpec: half-ball needs a positive radius");
    if (region == Region::HalfSpace && divergence_declared)
      throw std::invalid_argument(
          "QuadratureSpec: divergence-declared integrals must use HalfBall");
  }
};

struct IntegralResult {
  double value = 0.0;
  double err_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string& what, IntegralResult partial_result)
      : std::runtime_error(what), partial(partial_result) {}
  IntegralResult partial;
};

using Integrand2D = std::function<double(double r, double xN)>;

/// integral of f(r,x) x^m r^{n-1} |S^{n-1}| dr dx over the region (Boundary:
/// integral of f(r,0) r^{n-1} |S^{n-1}| dr). Throws QuadratureError carrying
/// the best estimate if the refinement budget is exhausted.
IntegralResult integrate_radial(const Integrand2D& f, int n, const QuadratureSpec& spec);

/// Monte-Carlo estimate with importance density proportional to x_N^m inside
/// the region; err_estimate is one standard error. Reproducible per seed.
IntegralResult mc_oracle(const Integrand2D& f, int n, const QuadratureSpec& spec,
                         std::int64_t n_samples, std::uint64_t seed);

}  // namespace fracyam
