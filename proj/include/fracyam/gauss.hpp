#pragma once

#include <vector>

namespace fracyam {

struct GaussRule {
  std::vector<double> x;  // nodes
  std::vector<double> w;  // weights
};

/// Gauss-Legendre rule on [-1,1]; cached per order.
const GaussRule& gauss_legendre(int npts);

/// Gauss-Jacobi rule for the weight (1+u)^beta on [-1,1] (alpha = 0),
/// computed by Golub-Welsch. Mapped to [0,h] with weight x^beta via
/// jacobi_on_interval.
GaussRule gauss_jacobi_beta(int npts, double beta);

/// Nodes/weights for integral over [0,h] of f(x) x^beta dx: sum w_i f(x_i).
GaussRule jacobi_on_interval(int npts, double beta, double h);

/// Finite-difference weights (Fornberg): weights such that
/// f^(m)(x0) ~ sum_i w_i f(nodes_i).
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);

/// Sorted union of breakpoints clipped to [lo,hi]; consecutive duplicates
/// closer than rel_eps * span are merged.
std::vector<double> merge_breakpoints(std::vector<double> pts, double lo, double hi,
                                      double rel_eps = 1e-12);

/// Geometric breakpoints lo * ratio^k up to hi (inclusive endpoints).
void add_geometric(std::vector<double>& pts, double lo, double hi, double ratio);

}  // namespace fracyam
