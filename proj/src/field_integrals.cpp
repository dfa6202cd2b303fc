#include "fracyam/field_integrals.hpp"

#include <algorithm>
#include <cmath>

#include "fracyam/gamma.hpp"
#include "fracyam/gauss.hpp"
#include "fracyam/threads.hpp"

namespace fracyam {

std::vector<double> half_ball_field_integrals(const ExtensionSource& src, int n,
                                              const std::vector<WeightedTerm>& terms,
                                              double R, int split,
                                              double feature) {
  unsigned mask = 0;
  for (const auto& t : terms) mask |= t.mask;
  const int nterms = static_cast<int>(terms.size());

  std::vector<double> bp;
  bp.push_back(0.0);
  add_geometric(bp, std::min(feature / 32.0, R / 32.0), R, 2.0);
  bp = merge_breakpoints(bp, 0.0, R);
  const GaussRule& gl = gauss_legendre(12);

  // flatten outer r nodes
  struct RNode { double r, w; };
  std::vector<RNode> rnodes;
  for (size_t p = 0; p + 1 < bp.size(); ++p) {
    const double width = (bp[p + 1] - bp[p]) / split;
    for (int s = 0; s < split; ++s) {
      const double a = bp[p] + s * width;
      for (size_t i = 0; i < gl.x.size(); ++i)
        rnodes.push_back({a + 0.5 * width * (1.0 + gl.x[i]), 0.5 * width * gl.w[i]});
    }
  }

  std::vector<std::vector<double>> partial(rnodes.size(),
                                           std::vector<double>(nterms, 0.0));

  parallel_for(static_cast<int>(rnodes.size()), [&](int ir) {
    const double r = rnodes[ir].r;
    const double X = std::sqrt(std::max(0.0, R * R - r * r));
    if (X <= 0.0) return;
    std::vector<double>& acc = partial[ir];

    const double h0 = std::min(0.5 * feature, X);
    // boundary panel: Gauss-Jacobi per distinct beta
    for (int k = 0; k < nterms; ++k) {
      GaussRule jr = jacobi_on_interval(14 * split > 28 ? 28 : 14 * split,
                                        terms[k].beta, h0);
      for (size_t i = 0; i < jr.x.size(); ++i) {
        const ExtFields f = src.fields(r, jr.x[i], terms[k].mask);
        acc[k] += jr.w[i] * terms[k].g(f, r, jr.x[i]);
      }
    }
    // interior panels, shared field evaluations
    if (X > h0) {
      std::vector<double> xb;
      add_geometric(xb, h0, X, 2.0);
      xb = merge_breakpoints(xb, h0, X);
      for (size_t p = 0; p + 1 < xb.size(); ++p) {
        const double width = (xb[p + 1] - xb[p]) / split;
        for (int s = 0; s < split; ++s) {
          const double a = xb[p] + s * width;
          for (size_t i = 0; i < gl.x.size(); ++i) {
            const double x = a + 0.5 * width * (1.0 + gl.x[i]);
            const double wq = 0.5 * width * gl.w[i];
            const ExtFields f = src.fields(r, x, mask);
            for (int k = 0; k < nterms; ++k)
              acc[k] += wq * terms[k].g(f, r, x) * std::pow(x, terms[k].beta);
          }
        }
      }
    }
  });

  std::vector<double> out(nterms, 0.0);
  const double area = sphere_area(n - 1);
  for (size_t ir = 0; ir < rnodes.size(); ++ir) {
    const double wr = rnodes[ir].w * std::pow(rnodes[ir].r, n - 1) * area;
    for (int k = 0; k < nterms; ++k) out[k] += wr * partial[ir][k];
  }
  return out;
}

namespace {

std::vector<double> tail_extrapolate(const std::vector<double>& I4,
                                     const std::vector<double>& I2,
                                     const std::vector<double>& I1) {
  std::vector<double> out(I1.size());
  for (size_t k = 0; k < I1.size(); ++k) {
    const double S1 = I1[k] - I2[k];
    const double S0 = I2[k] - I4[k];
    double tail = 0.0;
    if (std::fabs(S0) > 1e-300) {
      const double kappa = S1 / S0;
      if (kappa > 0.0 && kappa < 0.80) tail = S1 * kappa / (1.0 - kappa);
    }
    out[k] = I1[k] + tail;
  }
  return out;
}

}  // namespace

std::vector<double> half_space_field_integrals(const ExtensionSource& src, int n,
                                               const std::vector<WeightedTerm>& terms,
                                               double R, int split,
                                               double feature) {
  return tail_extrapolate(
      half_ball_field_integrals(src, n, terms, 0.25 * R, split, feature),
      half_ball_field_integrals(src, n, terms, 0.5 * R, split, feature),
      half_ball_field_integrals(src, n, terms, R, split, feature));
}

std::vector<double> half_ball_pair_integrals(const ExtensionSource& A,
                                             const ExtensionSource& B, int n,
                                             const std::vector<PairTerm>& terms,
                                             double R, int split,
                                             double feature) {
  unsigned mask = 0;
  for (const auto& t : terms) mask |= t.mask;
  const int nterms = static_cast<int>(terms.size());

  std::vector<double> bp;
  bp.push_back(0.0);
  add_geometric(bp, std::min(feature / 32.0, R / 32.0), R, 2.0);
  bp = merge_breakpoints(bp, 0.0, R);
  const GaussRule& gl = gauss_legendre(12);

  struct RNode { double r, w; };
  std::vector<RNode> rnodes;
  for (size_t p = 0; p + 1 < bp.size(); ++p) {
    const double width = (bp[p + 1] - bp[p]) / split;
    for (int s = 0; s < split; ++s) {
      const double a = bp[p] + s * width;
      for (size_t i = 0; i < gl.x.size(); ++i)
        rnodes.push_back({a + 0.5 * width * (1.0 + gl.x[i]), 0.5 * width * gl.w[i]});
    }
  }

  std::vector<std::vector<double>> partial(rnodes.size(),
                                           std::vector<double>(nterms, 0.0));
  parallel_for(static_cast<int>(rnodes.size()), [&](int ir) {
    const double r = rnodes[ir].r;
    const double X = std::sqrt(std::max(0.0, R * R - r * r));
    if (X <= 0.0) return;
    std::vector<double>& acc = partial[ir];
    const double h0 = std::min(0.5 * feature, X);
    for (int k = 0; k < nterms; ++k) {
      GaussRule jr = jacobi_on_interval(14 * split > 28 ? 28 : 14 * split,
                                        terms[k].beta, h0);
      for (size_t i = 0; i < jr.x.size(); ++i) {
        const ExtFields fa = A.fields(r, jr.x[i], terms[k].mask);
        const ExtFields fb = B.fields(r, jr.x[i], terms[k].mask);
        acc[k] += jr.w[i] * terms[k].g(fa, fb, r, jr.x[i]);
      }
    }
    if (X > h0) {
      std::vector<double> xb;
      add_geometric(xb, h0, X, 2.0);
      xb = merge_breakpoints(xb, h0, X);
      for (size_t p = 0; p + 1 < xb.size(); ++p) {
        const double width = (xb[p + 1] - xb[p]) / split;
        for (int s = 0; s < split; ++s) {
          const double a = xb[p] + s * width;
          for (size_t i = 0; i < gl.x.size(); ++i) {
            const double x = a + 0.5 * width * (1.0 + gl.x[i]);
            const double wq = 0.5 * width * gl.w[i];
            const ExtFields fa = A.fields(r, x, mask);
            const ExtFields fb = B.fields(r, x, mask);
            for (int k = 0; k < nterms; ++k)
              acc[k] += wq * terms[k].g(fa, fb, r, x) * std::pow(x, terms[k].beta);
          }
        }
      }
    }
  });

  std::vector<double> out(nterms, 0.0);
  const double area = sphere_area(n - 1);
  for (size_t ir = 0; ir < rnodes.size(); ++ir) {
    const double wr = rnodes[ir].w * std::pow(rnodes[ir].r, n - 1) * area;
    for (int k = 0; k < nterms; ++k) out[k] += wr * partial[ir][k];
  }
  return out;
}

std::vector<double> half_space_pair_integrals(const ExtensionSource& A,
                                              const ExtensionSource& B, int n,
                                              const std::vector<PairTerm>& terms,
                                              double R, int split,
                                              double feature) {
  return tail_extrapolate(
      half_ball_pair_integrals(A, B, n, terms, 0.25 * R, split, feature),
      half_ball_pair_integrals(A, B, n, terms, 0.5 * R, split, feature),
      half_ball_pair_integrals(A, B, n, terms, R, split, feature));
}

}  // namespace fracyam
