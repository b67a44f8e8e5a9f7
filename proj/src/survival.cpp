#include "hyperdecay/survival.hpp"

#include <cmath>
#include <numbers>

#include "hyperdecay/errors.hpp"

namespace hyperdecay {

SPMomentum::SPMomentum(double s) : s_(s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw DomainError("SP momentum: s = -p^2 must be finite and >= 0");
  }
}

SPMomentum::SPMomentum(const FourVectord& p, const Hyperplaned& plane)
    : s_(0.0), p_(p), plane_(plane) {
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  if (std::abs(mdot(p, plane.normal())) > 1e-12 * scale) {
    throw DomainError("SP momentum: p is not orthogonal to the normal");
  }
  s_ = std::max(0.0, -msquare(p));
}

double energy(double mu, double s) { return std::sqrt(mu * mu + s); }

SpectralDensity quadrature_density(const SpectralDensity& sigma, double s) {
  if (const auto* m = std::get_if<BreitWignerFullLine>(&sigma.model());
      m && s > 0.0) {
    return SpectralDensity::breit_wigner_truncated(m->mu0, m->gamma);
  }
  return sigma;
}

std::vector<double> oscillatory_breaks(const SpectralDensity& sigma, double s,
                                       double tau, const QuadratureConfig& cfg) {
  const Support sup = sigma.support();
  // |dE/dmu| = mu / E is largest at the top of the support.
  const double slope = sup.hi / energy(sup.hi, s);
  double max_width = sup.width() / 64.0;
  if (tau != 0.0) {
    const double period = 2.0 * std::numbers::pi / (std::abs(tau) * slope);
    const double per_panel = static_cast<double>(panel_rule().nodes.size());
    max_width = std::min(max_width, per_panel * period / cfg.points_per_period);
  }
  return refine_breaks(sigma.breakpoints(), max_width);
}

AmplitudeResult survival_amplitude(const SpectralDensity& sigma, double s,
                                   double tau, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(s >= 0.0)) throw DomainError("survival_amplitude: s must be >= 0");

  if (const auto* pm = std::get_if<PointMass>(&sigma.model())) {
    return {std::polar(1.0, -energy(pm->mu0, s) * tau), 0.0, 0.0};
  }
  if (const auto* bw = std::get_if<BreitWignerFullLine>(&sigma.model());
      bw && s == 0.0) {
    // Residue of the lower-half-plane pole at mu0 - i Gamma/2.
    return {std::polar(std::exp(-0.5 * bw->gamma * std::abs(tau)), -bw->mu0 * tau),
            0.0, 0.0};
  }

  const SpectralDensity model = quadrature_density(sigma, s);
  AmplitudeResult out{};
  if (sigma.is_full_line()) {
    // norm is the reciprocal of the mass kept inside the window
    out.truncation_error =
        1.0 - 1.0 / std::get<BreitWignerTruncated>(model.model()).norm;
  }

  const auto breaks = oscillatory_breaks(model, s, tau, cfg);

  AdaptiveOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.max_panels = cfg.max_panels;
  const auto r = integrate_adaptive<std::complex<double>>(
      [&](double mu) {
        return std::polar(model(mu), -energy(mu, s) * tau);
      },
      breaks, opt);
  if (r.error > cfg.rel_tol * std::max(r.l1, 1e-300)) {
    throw ConvergenceError("survival_amplitude: tolerance not reached",
                           r.error);
  }
  out.value = r.value;
  out.error = r.error;
  return out;
}

AmplitudeResult survival_amplitude(const SpectralDensity& sigma,
                                   const SPMomentum& p, double tau,
                                   const QuadratureConfig& cfg) {
  return survival_amplitude(sigma, p.s(), tau, cfg);
}

double survival_probability(const SpectralDensity& sigma, double s, double tau,
                            const QuadratureConfig& cfg) {
  return std::norm(survival_amplitude(sigma, s, tau, cfg).value);
}

}  // namespace hyperdecay
