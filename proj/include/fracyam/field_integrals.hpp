#pragma once

#include <functional>
#include <vector>

#include "fracyam/extension_source.hpp"

namespace fracyam {

/// One weighted integrand: g(fields, r, x) * x^beta, with g bounded up to the
/// boundary (any x_N power singularity must be folded into beta).
struct WeightedTerm {
  double beta;
  unsigned mask;
  std::function<double(const ExtFields&, double r, double x)> g;
};

/// Integrals of each term over the half-ball of radius R (flat measure,
/// including the r^{n-1} |S^{n-1}| boundary-sphere factor). All terms are
/// evaluated in a single pass over shared field evaluations.
std::vector<double> half_ball_field_integrals(const ExtensionSource& src, int n,
                                              const std::vector<WeightedTerm>& terms,
                                              double R, int split = 1,
                                              double feature = 1.0);

/// Half-space integrals: half-ball of radius R plus a power-law tail
/// extrapolated from the two outermost dyadic shells.
std::vector<double> half_space_field_integrals(const ExtensionSource& src, int n,
                                               const std::vector<WeightedTerm>& terms,
                                               double R, int split = 1,
                                               double feature = 1.0);

/// Same drivers for bilinear pairings of two sources.
struct PairTerm {
  double beta;
  unsigned mask;
  std::function<double(const ExtFields&, const ExtFields&, double, double)> g;
};

std::vector<double> half_ball_pair_integrals(const ExtensionSource& A,
                                             const ExtensionSource& B, int n,
                                             const std::vector<PairTerm>& terms,
                                             double R, int split = 1,
                                             double feature = 1.0);

std::vector<double> half_space_pair_integrals(const ExtensionSource& A,
                                              const ExtensionSource& B, int n,
                                              const std::vector<PairTerm>& terms,
                                              double R, int split = 1,
                                              double feature = 1.0);

}  // namespace fracyam
