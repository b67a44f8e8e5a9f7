#ifndef HYPERDECAY_LIFETIME_HPP
#define HYPERDECAY_LIFETIME_HPP

// Mean lifetimes T(s) = integral_0^inf P_s(tau) dtau of SP-momentum
// eigenstates, and the Breit-Wigner approximations to their deviation from
// Einstein time dilation.

#include <span>
#include <string>
#include <vector>

#include "hyperdecay/quadrature.hpp"
#include "hyperdecay/spectral.hpp"

namespace hyperdecay {

enum class LifetimeMethod { closed_form, direct, bw_approx };
enum class TaylorVariant { derived, literal };

std::string to_string(LifetimeMethod m);
std::string to_string(TaylorVariant v);

struct LifetimeResult {
  double value = 0.0;
  LifetimeMethod method = LifetimeMethod::closed_form;
  double error = 0.0;
};

/// sqrt(mu0^2 + s) / mu0
double dilation_factor(double mu0, double s);

/// T = pi * integral sigma(mu)^2 sqrt(mu^2 + s) / mu dmu.
///
/// For the full-line Breit-Wigner mu is signed, so sqrt(mu^2 + s)/mu is odd
/// and the integral is a principal value at mu = 0. At s = 0 this is 1/Gamma
/// up to the (Gamma/mu0)^3 weight the Lorentzian puts below zero.
/// Throws DomainError for a point mass (stable) and when the integrand is not
/// integrable at mu = 0 (support reaching zero with sigma(0) > 0 and s > 0).
LifetimeResult lifetime_closed_form(const SpectralDensity& sigma, double s);

struct DirectOptions {
  double rel_tol = 1e-4;
  double cutoff_factor = 40.0;  ///< tau_max in units of the closed form
};

/// Integral of the survival probability up to tau_max plus a tail bound.
/// Throws ConvergenceError when the tail bound exceeds half of
/// rel_tol * T.
LifetimeResult lifetime_direct(const SpectralDensity& sigma, double s,
                               const QuadratureConfig& cfg = {},
                               const DirectOptions& opt = {});

/// gamma(mu) ~ gamma0 + c1 (mu - mu0) + c2 (mu - mu0)^2
struct TaylorCoefficients {
  double gamma0;
  double c1;
  double c2;
};

/// `derived` holds the analytic derivatives of sqrt(mu^2 + s)/mu at mu0:
///   c2 = s (1.5 mu0^2 + s) / (mu0^3 E0^3).
/// `literal` is the alternative form with 2s in place of the second s,
/// which is off at O(s^2) and kept for comparison only.
TaylorCoefficients taylor_coefficients(double mu0, double s,
                                       TaylorVariant variant);

double dilation_factor_taylor(double mu0, double s, double mu,
                              TaylorVariant variant = TaylorVariant::derived);

/// T0 (gamma0 + c2 Gamma^2 / 4) with T0 = 1/Gamma, from the Breit-Wigner
/// identities integral sigma^2 = 1/(pi Gamma) and
/// integral sigma^2 (mu - mu0)^2 = Gamma / (4 pi). Requires Gamma/mu0 < 0.2.
LifetimeResult lifetime_bw_approx(double mu0, double gamma, double s,
                                  TaylorVariant variant = TaylorVariant::derived);

struct DeviationRow {
  double s;
  double lifetime;   ///< closed form T(s)
  double einstein;   ///< gamma0(s) T(0)
  double deviation;  ///< T(s) / (gamma0 T(0)) - 1
  double error;
};

/// gamma0 uses reference_mass(); the s = 0 row has deviation exactly 0.
std::vector<DeviationRow> deviation_report(const SpectralDensity& sigma,
                                           std::span<const double> s_grid);

}  // namespace hyperdecay

#endif  // HYPERDECAY_LIFETIME_HPP
