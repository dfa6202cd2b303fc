#include "fracyam/gauss.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "fracyam/gamma.hpp"

namespace fracyam {

namespace {

// Golub-Welsch from three-term recurrence coefficients (a_k diagonal,
// sqrt(b_k) off-diagonal), b0 = total weight mass.
GaussRule golub_welsch(const std::vector<double>& a, const std::vector<double>& b,
                       double b0) {
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = a[i];
    if (i + 1 < n) {
      const double off = std::sqrt(b[i + 1]);
      J(i, i + 1) = off;
      J(i + 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.x[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    rule.w[i] = b0 * v * v;
  }
  return rule;
}

GaussRule make_jacobi(int n, double alpha, double beta) {
  std::vector<double> a(n), b(n, 0.0);
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    a[k] = den == 0.0 ? (beta - alpha) / (ab + 2.0)
                      : (beta * beta - alpha * alpha) / den;
    if (k > 0) {
      const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
      const double d2 = (2.0 * k + ab) * (2.0 * k + ab);
      b[k] = num / (d2 * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0));
    }
  }
  // b0 = int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
  const double b0 = std::pow(2.0, ab + 1.0) * gamma_fn(alpha + 1.0) *
                    gamma_fn(beta + 1.0) / gamma_fn(ab + 2.0);
  return golub_welsch(a, b, b0);
}

}  // namespace

const GaussRule& gauss_legendre(int npts) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(npts);
  if (it == cache.end()) it = cache.emplace(npts, make_jacobi(npts, 0.0, 0.0)).first;
  return it->second;
}

GaussRule gauss_jacobi_beta(int npts, double beta) {
  return make_jacobi(npts, 0.0, beta);
}

GaussRule jacobi_on_interval(int npts, double beta, double h) {
  if (beta <= -1.0) throw std::invalid_argument("jacobi_on_interval: beta <= -1");
  GaussRule base = gauss_jacobi_beta(npts, beta);
  // x = h (1+u)/2, weight x^beta dx = (h/2)^{beta+1} (1+u)^beta du
  GaussRule out;
  out.x.resize(npts);
  out.w.resize(npts);
  const double scale = std::pow(0.5 * h, beta + 1.0);
  for (int i = 0; i < npts; ++i) {
    out.x[i] = 0.5 * h * (1.0 + base.x[i]);
    out.w[i] = scale * base.w[i];
  }
  return out;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m) {
  // Fornberg (1988) recursive algorithm.
  const int n = static_cast<int>(nodes.size()) - 1;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

std::vector<double> merge_breakpoints(std::vector<double> pts, double lo, double hi,
                                      double rel_eps) {
  pts.push_back(lo);
  pts.push_back(hi);
  std::vector<double> clipped;
  for (double p : pts)
    if (p >= lo && p <= hi) clipped.push_back(p);
  std::sort(clipped.begin(), clipped.end());
  const double tol = rel_eps * (hi - lo);
  std::vector<double> out;
  for (double p : clipped) {
    if (out.empty() || p - out.back() > tol) out.push_back(p);
  }
  if (out.size() < 2) out = {lo, hi};
  out.front() = lo;
  out.back() = hi;
  return out;
}

void add_geometric(std::vector<double>& pts, double lo, double hi, double ratio) {
  for (double p = lo; p < hi; p *= ratio) pts.push_back(p);
}

}  // namespace fracyam
