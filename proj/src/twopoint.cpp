#include "hyperdecay/twopoint.hpp"

#include <cmath>

#include "hyperdecay/errors.hpp"
#include "hyperdecay/survival.hpp"

namespace hyperdecay {

namespace {

void require_positive_support(const SpectralDensity& sigma, const char* who) {
  if (sigma.is_point_mass() || sigma.is_full_line()) {
    throw DomainError(std::string(who) +
                      ": needs a density supported in [0, inf)");
  }
}

template <typename T, typename F>
T integrate_over(const SpectralDensity& sigma, double s, double dtau,
                 const QuadratureConfig& cfg, F&& f, const char* who) {
  cfg.validate();
  if (!(s >= 0.0)) throw DomainError(std::string(who) + ": s must be >= 0");
  AdaptiveOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.max_panels = cfg.max_panels;
  const auto breaks = oscillatory_breaks(sigma, s, dtau, cfg);
  const auto r = integrate_adaptive<T>(f, breaks, opt);
  if (r.error > cfg.rel_tol * std::max(r.l1, 1e-300)) {
    throw ConvergenceError(std::string(who) + ": tolerance not reached",
                           r.error);
  }
  return r.value;
}

}  // namespace

FieldCoupling FieldCoupling::matched(const SpectralDensity& sigma) {
  require_positive_support(sigma, "coupling_matched");
  return FieldCoupling(
      [sigma](double mu) {
        if (!(mu > 0.0)) return 0.0;
        return std::sqrt(2.0 * mu) * r_weight(sigma, mu);
      },
      false);
}

FieldCoupling FieldCoupling::tabulated(std::vector<double> mu,
                                       std::vector<double> f) {
  for (double v : f) {
    if (!(v >= 0.0)) throw DomainError("tabulated coupling: f must be >= 0");
  }
  auto table = SpectralDensity::tabulated(std::move(mu), std::move(f));
  return FieldCoupling([table](double m) { return table(m); }, false);
}

FieldCoupling FieldCoupling::zero() {
  return FieldCoupling([](double) { return 0.0; }, true);
}

FieldCoupling coupling_matched(const SpectralDensity& sigma) {
  return FieldCoupling::matched(sigma);
}

std::complex<double> pair_contribution(const FieldCoupling& f,
                                       const SpectralDensity& sigma, double s,
                                       double dtau,
                                       const QuadratureConfig& cfg) {
  require_positive_support(sigma, "pair_contribution");
  if (f.is_zero()) return 0.0;
  return integrate_over<std::complex<double>>(
      sigma, s, dtau, cfg,
      [&](double mu) {
        const double e = energy(mu, s);
        const double fv = f(mu);
        return std::polar(mu * fv * fv / e, e * dtau);
      },
      "pair_contribution");
}

double projection_weight(const FieldCoupling& f, const SpectralDensity& sigma,
                         double s, const QuadratureConfig& cfg) {
  require_positive_support(sigma, "projection_weight");
  if (f.is_zero()) return 0.0;
  const double b = integrate_over<double>(
      sigma, s, 0.0, cfg,
      [&](double mu) {
        if (!(mu > 0.0)) return 0.0;
        return 2.0 * mu * r_weight(sigma, mu) * f(mu) /
               std::sqrt(2.0 * energy(mu, s));
      },
      "projection_weight");
  return b * b;
}

std::complex<double> projected_contribution(const FieldCoupling& f,
                                            const SpectralDensity& sigma,
                                            double s, double dtau,
                                            const QuadratureConfig& cfg) {
  const double b = projection_weight(f, sigma, s, cfg);
  if (b == 0.0) return 0.0;
  return survival_amplitude(sigma, s, -dtau, cfg).value * b;
}

std::complex<double> residual(const FieldCoupling& f,
                              const SpectralDensity& sigma, double s,
                              double dtau, const QuadratureConfig& cfg) {
  return pair_contribution(f, sigma, s, dtau, cfg) -
         projected_contribution(f, sigma, s, dtau, cfg);
}

}  // namespace hyperdecay
