#include "fracyam/gamma.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracyam {

namespace {

// Lanczos coefficients, g = 7, n = 9 (Godfrey/Pugh tabulation).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_positive(double x) {
  // valid for x >= 0.5
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

}  // namespace

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) {
    throw std::domain_error("gamma_fn: pole at x = " + std::to_string(x));
  }
  if (x >= 0.5) return lanczos_positive(x);
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  return M_PI / (std::sin(M_PI * x) * lanczos_positive(1.0 - x));
}

double log_gamma_abs(double x) {
  return std::log(std::fabs(gamma_fn(x)));
}

double sphere_area(int k) {
  // |S^k| = 2 pi^{(k+1)/2} / Gamma((k+1)/2)
  return 2.0 * std::pow(M_PI, 0.5 * (k + 1)) / gamma_fn(0.5 * (k + 1));
}

}  // namespace fracyam
