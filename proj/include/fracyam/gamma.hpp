#pragma once

namespace fracyam {

/// Gamma function for real arguments, Lanczos approximation (g=7, 9 terms)
/// with the reflection formula for x < 0.5. Relative error below 1e-13 for
/// |x| <= 50 away from the poles. Throws std::domain_error at poles.
double gamma_fn(double x);

/// log |Gamma(x)|, same domain restrictions.
double log_gamma_abs(double x);

/// Surface area of the unit k-sphere S^k embedded in R^{k+1}.
double sphere_area(int k);

}  // namespace fracyam
