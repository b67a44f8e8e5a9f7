#include "hyperdecay/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "hyperdecay/errors.hpp"

namespace hyperdecay {

namespace {

Eigen::VectorXd energies(const DiscreteState& state) {
  return (state.mu.array().square() + state.s).sqrt().matrix();
}

// Nodes equidistributed in M(mu) = (A(mu) + L(mu)) / 2, where A is the
// normalized Breit-Wigner angle atan(2 (mu - mu0) / Gamma) and L is linear
// in mu, both running from 0 to 1 over the support. The angle half resolves
// the peak; the linear half bounds the tail spacing so the phase stays
// resolved at large tau. Weights are the trapezoid rule in M.
void peak_refined_grid(double mu0, double gamma, const Support& sup,
                       std::size_t n, Eigen::VectorXd& mu,
                       Eigen::VectorXd& w) {
  const double half = 0.5 * gamma;
  const double t0 = std::atan((sup.lo - mu0) / half);
  const double t1 = std::atan((sup.hi - mu0) / half);
  auto cumulative = [&](double x) {
    return 0.5 * ((std::atan((x - mu0) / half) - t0) / (t1 - t0) +
                  (x - sup.lo) / sup.width());
  };
  auto density = [&](double x) {
    const double d = x - mu0;
    return 0.5 * (half / (d * d + half * half) / (t1 - t0) + 1.0 / sup.width());
  };
  const double h = 1.0 / static_cast<double>(n - 1);
  mu.resize(static_cast<Eigen::Index>(n));
  w.resize(static_cast<Eigen::Index>(n));
  double lo = sup.lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = h * static_cast<double>(i);
    double x = lo, a = lo, b = sup.hi;
    if (i + 1 == n) {
      x = sup.hi;
    } else if (i > 0) {
      // Safeguarded Newton on the monotone cumulative map.
      x = std::clamp(lo + h / density(lo), a, b);
      for (int it = 0; it < 100; ++it) {
        const double f = cumulative(x) - target;
        if (f > 0.0) b = x; else a = x;
        double next = x - f / density(x);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::abs(next - x) <= 1e-15 * std::abs(x)) { x = next; break; }
        x = next;
      }
    }
    const double end = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    mu[static_cast<Eigen::Index>(i)] = x;
    w[static_cast<Eigen::Index>(i)] = end * h / density(x);
    lo = x;
  }
}

}  // namespace

DiscreteState from_spectral(const SpectralDensity& sigma, double s,
                            std::size_t n, MassGrid grid) {
  if (!(s >= 0.0)) throw DomainError("from_spectral: s must be >= 0");
  if (n == 0) throw DomainError("from_spectral: n must be >= 1");
  if (n == 1) {
    DiscreteState one;
    one.mu = Eigen::VectorXd::Constant(1, sigma.reference_mass());
    one.c = Eigen::VectorXcd::Ones(1);
    one.s = s;
    return one;
  }
  if (sigma.is_point_mass()) {
    throw DomainError("from_spectral: point mass admits only n = 1");
  }
  const Support sup = sigma.support();
  if (!std::isfinite(sup.lo) || !std::isfinite(sup.hi)) {
    throw DomainError("from_spectral: needs a finite (truncated) support");
  }

  Eigen::VectorXd mu, w;
  if (grid == MassGrid::peak_refined) {
    const auto gamma = sigma.width();
    if (!gamma) throw DomainError("from_spectral: peak refinement needs a width");
    peak_refined_grid(sigma.reference_mass(), *gamma, sup, n, mu, w);
  } else {
    mu = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), sup.lo, sup.hi);
    w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                  sup.width() / static_cast<double>(n - 1));
    w[0] *= 0.5;
    w[w.size() - 1] *= 0.5;
  }

  DiscreteState out;
  out.s = s;
  out.c.resize(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    out.c[i] = std::sqrt(sigma(mu[i]) * w[i]);
  }
  const double nrm = out.c.norm();
  if (!(nrm > 0.0)) throw DomainError("from_spectral: grid carries no weight");
  out.c /= nrm;
  out.mu = std::move(mu);
  return out;
}

DiscreteState evolve(const DiscreteState& state, double tau) {
  DiscreteState out = state;
  const Eigen::VectorXd e = energies(state);
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    out.c[i] *= std::polar(1.0, -e[i] * tau);
  }
  return out;
}

std::complex<double> survival_oracle(const DiscreteState& state, double tau) {
  const Eigen::VectorXd e = energies(state);
  std::complex<double> sum = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    sum += std::norm(state.c[i]) * std::polar(1.0, -e[i] * tau);
  }
  return sum;
}

ComponentDecomposition<double> mass_squared_decomposition(
    const DiscreteState& state) {
  return component_decomposition(state.mu.array().square().matrix(), state);
}

DecayDecomposition decay_decomposition(const DiscreteState& state, double tau) {
  const Eigen::VectorXd e = energies(state);
  Eigen::VectorXcd phases(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    phases[i] = std::polar(1.0, -e[i] * tau);
  }
  auto d = component_decomposition(phases, state);
  return {d.mean, std::move(d.orthogonal), d.spread};
}

}  // namespace hyperdecay
