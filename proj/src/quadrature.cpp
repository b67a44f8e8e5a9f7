#include "hyperdecay/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace hyperdecay {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("quadrature: rel_tol must be > 0");
  if (!(points_per_period >= 4.0)) {
    throw DomainError("quadrature: points_per_period must be >= 4");
  }
  if (max_panels < 1) throw DomainError("quadrature: max_panels must be >= 1");
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from the Tricomi initial guess; symmetric pairs.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      const double pn = (n == 1) ? x : p1;
      const double pnm1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: n must be >= 1");
  // Golub-Welsch: eigenvalues of the Jacobi matrix of the Hermite recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  // Symmetrize against eigen-solver rounding.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const GaussRule& panel_rule() {
  static const GaussRule rule = gauss_legendre(16);
  return rule;
}

std::vector<double> uniform_breaks(double a, double b, double max_width) {
  std::size_t count = 1;
  if (max_width > 0.0 && std::isfinite(max_width)) {
    count = static_cast<std::size_t>(std::ceil((b - a) / max_width));
    count = std::max<std::size_t>(count, 1);
  }
  std::vector<double> out(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count);
  }
  out.back() = b;
  return out;
}

std::vector<double> merge_breaks(std::vector<double> points, double lo,
                                 double hi) {
  points.push_back(lo);
  points.push_back(hi);
  std::erase_if(points, [&](double x) { return !(x >= lo && x <= hi); });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

std::vector<double> refine_breaks(std::span<const double> breaks,
                                  double max_width) {
  std::vector<double> out;
  if (breaks.empty()) return out;
  out.push_back(breaks.front());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto seg = uniform_breaks(breaks[i], breaks[i + 1], max_width);
    out.insert(out.end(), seg.begin() + 1, seg.end());
  }
  return out;
}

}  // namespace hyperdecay
