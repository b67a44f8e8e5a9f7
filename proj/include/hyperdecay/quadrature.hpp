#ifndef HYPERDECAY_QUADRATURE_HPP
#define HYPERDECAY_QUADRATURE_HPP

// Fixed-order Gauss-Legendre panels with doubled-panel error control.
//
// Every panel is integrated once whole and once as two halves; the halves
// are kept as the panel value and their difference from the whole is the
// error estimate. The panel with the largest estimate is bisected until the
// summed estimate is below max(abs_tol, rel_tol * integral of |f|). Scaling
// the target by the L1 norm keeps the control meaningful for oscillatory
// integrands whose value is much smaller than their magnitude.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "hyperdecay/errors.hpp"

namespace hyperdecay {

/// Tolerances and resolution shared by every quadrature-backed operation.
struct QuadratureConfig {
  double rel_tol = 1e-8;
  std::size_t max_panels = 400000;
  /// Quadrature points per oscillation period used to size initial panels.
  double points_per_period = 8.0;

  void validate() const;
};

template <typename T>
struct QuadResult {
  T value{};
  double error = 0.0;
  double l1 = 0.0;  ///< integral of |f|
  std::size_t panels = 0;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

/// n-point Gauss-Hermite rule for weight exp(-x^2) on the real line.
GaussRule gauss_hermite(int n);

/// The panel rule used by integrate_adaptive.
const GaussRule& panel_rule();

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_panels = 400000;
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

template <typename T>
struct PanelSum {
  T value{};
  double l1 = 0.0;
};

template <typename T, typename F>
PanelSum<T> gauss_panel(F& f, double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  PanelSum<T> s;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const T fx = f(mid + half * rule.nodes[i]);
    s.value += rule.weights[i] * fx;
    s.l1 += rule.weights[i] * magnitude(fx);
  }
  s.value *= half;
  s.l1 *= half;
  return s;
}

template <typename T>
struct Panel {
  double a, b;
  PanelSum<T> left, right;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename T, typename F>
Panel<T> make_panel(F& f, double a, double b, const PanelSum<T>& whole,
                    const GaussRule& rule) {
  const double m = 0.5 * (a + b);
  Panel<T> p{a, b, gauss_panel<T>(f, a, m, rule), gauss_panel<T>(f, m, b, rule),
             0.0};
  p.error = magnitude(p.left.value + p.right.value - whole.value);
  return p;
}

}  // namespace detail

/// Integrates f over the consecutive intervals of `breaks`.
template <typename T, typename F>
QuadResult<T> integrate_adaptive(F&& f, std::span<const double> breaks,
                                 const AdaptiveOptions& opt) {
  using detail::Panel;
  const GaussRule& rule = panel_rule();
  std::vector<Panel<T>> heap;  // max-heap on error
  QuadResult<T> out;
  if (breaks.size() < 2) return out;

  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    if (!(b > a)) continue;
    const auto whole = detail::gauss_panel<T>(f, a, b, rule);
    heap.push_back(detail::make_panel<T>(f, a, b, whole, rule));
  }
  std::make_heap(heap.begin(), heap.end());

  auto totals = [&heap](double& l1, double& err) {
    l1 = 0.0;
    err = 0.0;
    for (const auto& p : heap) {
      l1 += p.left.l1 + p.right.l1;
      err += p.error;
    }
  };

  double l1_norm = 0.0, total_error = 0.0;
  totals(l1_norm, total_error);
  const double span_width = breaks.back() - breaks.front();
  std::size_t iterations = 0;

  while (!heap.empty() &&
         total_error > std::max(opt.abs_tol, opt.rel_tol * l1_norm)) {
    if (heap.size() >= opt.max_panels) {
      throw ConvergenceError("adaptive quadrature exceeded panel limit",
                             total_error / std::max(l1_norm, 1e-300));
    }
    const Panel<T>& top = heap.front();
    if (top.b - top.a <
        64.0 * std::numeric_limits<double>::epsilon() *
            std::max(std::abs(top.a) + std::abs(top.b), span_width)) {
      break;  // at the resolution floor; rounding dominates the estimate
    }
    std::pop_heap(heap.begin(), heap.end());
    Panel<T> worst = std::move(heap.back());
    heap.pop_back();
    const double m = 0.5 * (worst.a + worst.b);
    auto left = detail::make_panel<T>(f, worst.a, m, worst.left, rule);
    auto right = detail::make_panel<T>(f, m, worst.b, worst.right, rule);
    total_error += left.error + right.error - worst.error;
    l1_norm += left.left.l1 + left.right.l1 + right.left.l1 + right.right.l1 -
               worst.left.l1 - worst.right.l1;
    heap.push_back(std::move(left));
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(std::move(right));
    std::push_heap(heap.begin(), heap.end());
    if (++iterations % 1024 == 0) totals(l1_norm, total_error);  // drift
  }

  T value{};
  for (const auto& p : heap) value += p.left.value + p.right.value;
  totals(out.l1, out.error);
  out.value = value;
  out.panels = heap.size();
  return out;
}

/// Breakpoints splitting [a, b] into equal panels no wider than max_width.
std::vector<double> uniform_breaks(double a, double b, double max_width);

/// Merges sorted breakpoint lists, keeping only those inside [lo, hi].
std::vector<double> merge_breaks(std::vector<double> points, double lo,
                                 double hi);

/// Refines each interval of `breaks` so no panel exceeds max_width.
std::vector<double> refine_breaks(std::span<const double> breaks,
                                  double max_width);

}  // namespace hyperdecay

#endif  // HYPERDECAY_QUADRATURE_HPP
