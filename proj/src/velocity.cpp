#include "hyperdecay/velocity.hpp"

#include <cmath>

#include "hyperdecay/errors.hpp"
#include "hyperdecay/survival.hpp"

namespace hyperdecay {

namespace {

// 1 / v0 = sqrt(1 - u^2), factored to keep precision as |u| -> 1.
double inverse_gamma(const ThreeVectord& u) {
  const double speed = u.norm();
  if (!(speed < 1.0)) throw DomainError("velocity: |u| must be < 1");
  return std::sqrt((1.0 - speed) * (1.0 + speed));
}

}  // namespace

FourVectord four_velocity(const ThreeVectord& u) {
  return boost_from_velocity(u) * time_axis();
}

std::complex<double> contracted_survival(const SpectralDensity& sigma,
                                         const ThreeVectord& u, double t,
                                         const QuadratureConfig& cfg) {
  return survival_amplitude(sigma, 0.0, t / inverse_gamma(u), cfg).value;
}

LifetimeResult contracted_lifetime(const SpectralDensity& sigma,
                                   const ThreeVectord& u) {
  const double k = inverse_gamma(u);
  auto r = lifetime_closed_form(sigma, 0.0);
  r.value *= k;
  r.error *= k;
  return r;
}

Fig2Intervals fig2_intervals(double t0, const ThreeVectord& u) {
  const double k = inverse_gamma(u);
  return {t0 * k, t0 / k};
}

double velocity_norm_factor(const SpectralDensity& sigma) {
  return moment(sigma, -3);
}

}  // namespace hyperdecay
