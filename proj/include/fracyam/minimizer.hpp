#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fracyam/params.hpp"
#include "fracyam/report.hpp"

namespace fracyam {

struct MinimizerState {
  std::vector<double> trace;
  double energy = 0.0;
  int iteration = 0;
  double grad_norm = 0.0;
  bool clamped = false;
  bool stalled = false;
};

/// Discrete trace-energy functional on a log-radial grid. The numerator is
/// the extension pairing: each trace is Poisson-extended and the weighted
/// Neumann limit extracted by a boundary-layer fit, assembled once into a
/// linear operator, so the discrete energy is an exact rational function of
/// the samples and its gradient is exact.
class TraceEnergy {
 public:
  struct Options {
    int panels = 27;
    int nodes = 6;
    double r_min = 5e-2;
    double r_max = 1e3;
    double fit_x0 = 1e-3;  // smallest boundary-layer row
    int quad_nodes = 14;
  };

  explicit TraceEnergy(ParamPoint p);
  TraceEnergy(ParamPoint p, Options opt);

  const ParamPoint& param() const { return p_; }
  const std::vector<double>& r_grid() const { return r_; }

  std::vector<double> bubble_trace(double eps = 1.0) const;
  std::vector<double> gaussian_trace() const;
  std::vector<double> plateau_trace() const;

  double mass(const std::vector<double>& u) const;
  std::vector<double> normalize(const std::vector<double>& u) const;
  double energy(const std::vector<double>& u) const;
  /// dE/du_i (exact discrete gradient of energy()).
  std::vector<double> gradient(const std::vector<double>& u) const;
  /// L2(weight)-norm of the constraint-tangent-projected gradient density.
  double projected_grad_norm(const std::vector<double>& u,
                             const std::vector<double>& grad,
                             std::vector<double>* direction = nullptr) const;

  /// (-Delta)^gamma of the sampled trace (the assembled linear operator).
  std::vector<double> fractional_laplacian(const std::vector<double>& u) const;

  std::vector<double> mass_gradient(const std::vector<double>& u) const;

  /// Resample so the half-height radius sits at 1 (dilation gauge fixing).
  std::vector<double> rescale_to_gauge(const std::vector<double>& u) const;

  double target_mass() const { return mass0_; }

 private:
  ParamPoint p_;
  Options opt_;
  std::vector<double> r_;
  Eigen::VectorXd w_meas_;   // boundary measure weights
  Eigen::VectorXd w_mass_;   // measure weights with exact cap/tail on the ends
  Eigen::MatrixXd T_;        // fractional Laplacian operator on samples
  Eigen::MatrixXd B_;        // symmetrized quadratic-form matrix
  double cap_w_ = 0.0;       // bubble-shaped cap measure weight below r_min
  double tail_w_ = 0.0;      // bubble-shaped tail measure weight beyond r_max
  double mass0_;
};

MinimizerState minimize(TraceEnergy& f, std::vector<double> init, int max_iter,
                        double tol);

/// Fit (eps, amplitude) of the nearest bubble by value and half-height radius,
/// then return the max relative deviation on r within 4x the half-height.
double bubble_match_deviation(const TraceEnergy& f, const std::vector<double>& u);

}  // namespace fracyam
