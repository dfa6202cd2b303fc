#include <cmath>

#include "doctest.h"
#include "fracyam/constants.hpp"
#include "fracyam/minimizer.hpp"
#include "fracyam/rng.hpp"

using namespace fracyam;

namespace {

TraceEnergy& shared_energy() {
  static TraceEnergy f(ParamPoint(3, 0.5));
  return f;
}

}  // namespace

TEST_CASE("discrete bubble energy reproduces the sphere constant") {
  TraceEnergy& f = shared_energy();
  const double Y = constants(ParamPoint(3, 0.5)).Y_sphere;
  const double E = f.energy(f.normalize(f.bubble_trace()));
  CHECK(E == doctest::Approx(Y).epsilon(1e-5));
  // degree-0 homogeneity
  std::vector<double> u = f.bubble_trace();
  std::vector<double> u2 = u;
  for (double& v : u2) v *= 2.5;
  CHECK(f.energy(u) == doctest::Approx(f.energy(u2)).epsilon(1e-12));
}

TEST_CASE("normalization is exact and preserved") {
  TraceEnergy& f = shared_energy();
  const std::vector<double> u = f.normalize(f.gaussian_trace());
  CHECK(f.mass(u) == doctest::Approx(f.target_mass()).epsilon(1e-12));
}

TEST_CASE("gradient matches finite differences on tangent directions") {
  TraceEnergy& f = shared_energy();
  Rng rng(5);
  const std::vector<double> u = f.normalize(f.gaussian_trace());
  const std::vector<double> grad = f.gradient(u);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> phi(u.size());
    for (size_t i = 0; i < phi.size(); ++i) phi[i] = rng.uniform(-1.0, 1.0) * u[i];
    const double t = 1e-4;
    std::vector<double> up(u), um(u);
    for (size_t i = 0; i < u.size(); ++i) {
      up[i] += t * phi[i];
      um[i] -= t * phi[i];
    }
    const double fd = (f.energy(up) - f.energy(um)) / (2.0 * t);
    double dd = 0.0;
    for (size_t i = 0; i < u.size(); ++i) dd += grad[i] * phi[i];
    CHECK(std::fabs(fd - dd) <= 1e-4 * (std::fabs(fd) + std::fabs(dd) + 1e-9));
  }
}

TEST_CASE("bubble is near-stationary; descent from a gaussian converges") {
  TraceEnergy& f = shared_energy();
  const double Y = constants(ParamPoint(3, 0.5)).Y_sphere;

  MinimizerState bub = minimize(f, f.bubble_trace(), 30, 1e-3);
  CHECK(std::fabs(bub.energy - Y) < 1e-4);
  const std::vector<double> w = f.normalize(f.rescale_to_gauge(f.bubble_trace()));
  // profile movement measured where the extremal profile lives (the edge
  // samples are boundary-layer artifacts of the discretization)
  double moved = 0.0;
  for (size_t i = 0; i < w.size(); ++i)
    if (f.r_grid()[i] >= 0.25 && f.r_grid()[i] <= 4.0)
      moved = std::max(moved, std::fabs(bub.trace[i] - w[i]) / w[i]);
  CHECK(moved < 1e-4);

  MinimizerState st = minimize(f, f.gaussian_trace(), 20000, 2e-4);
  CHECK(st.energy > Y - 1e-5);  // sharpness: never below the sphere constant
  CHECK(st.energy < Y * 1.005);
  CHECK(bubble_match_deviation(f, st.trace) < 0.05);
}

TEST_CASE("monotone descent and error paths") {
  TraceEnergy& f = shared_energy();
  std::vector<double> zero(f.r_grid().size(), 0.0);
  CHECK_THROWS_AS(minimize(f, zero, 10, 1e-4), std::invalid_argument);
  std::vector<double> neg(f.r_grid().size(), 1.0);
  neg[3] = -0.5;
  CHECK_THROWS_AS(minimize(f, neg, 10, 1e-4), std::invalid_argument);
}
