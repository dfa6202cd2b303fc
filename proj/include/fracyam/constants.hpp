#pragma once

#include "fracyam/params.hpp"

namespace fracyam {

/// The named constants of the flat model, all dimensionless. Immutable;
/// cached per (n, gamma).
struct ConstantSet {
  double d_gamma;
  double kappa_gamma;
  double p_n_gamma;
  double alpha_n_gamma;
  double S_n_gamma;
  double Y_sphere;
};

const ConstantSet& constants(const ParamPoint& p);

/// Quadrature value of p_{n,gamma} * int x_N^{2g} (|y|^2 + x_N^2)^{-(n+2g)/2} dy
/// over R^n. Equals 1 for every x_N > 0.
double poisson_normalization_check(const ParamPoint& p, double xN);

}  // namespace fracyam
