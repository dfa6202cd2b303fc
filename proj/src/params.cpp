#include "fracyam/params.hpp"

#include <cmath>
#include <string>

namespace fracyam {

ParamPoint::ParamPoint(int n, double gamma, double gamma_one_margin)
    : n_(n), gamma_(gamma) {
  if (n < 2) throw std::invalid_argument("ParamPoint: n must be >= 2");
  if (!(gamma > 0.0 && gamma < 2.0))
    throw std::invalid_argument("ParamPoint: gamma must lie in (0,1) u (1,2)");
  if (!(gamma < 0.5 * n))
    throw std::invalid_argument("ParamPoint: need gamma < n/2");
  if (std::fabs(gamma - 1.0) < gamma_one_margin)
    throw std::invalid_argument(
        "ParamPoint: gamma too close to 1 (margin " +
        std::to_string(gamma_one_margin) + ")");
}

}  // namespace fracyam
