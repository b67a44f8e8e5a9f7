#ifndef HYPERDECAY_TWOPOINT_HPP
#define HYPERDECAY_TWOPOINT_HPP

// Reduced kernels of the two-point function: the full pair contribution, the
// part carried by nearly undecayed SP states, and their difference. Constant
// factors and the common spatial phase are stripped, so each kernel depends
// on (s, dtau) only, with dtau the offset difference along eta.
//
// All integrals run over mu with dmu^2 = 2 mu dmu applied explicitly.

#include <complex>
#include <functional>
#include <vector>

#include "hyperdecay/quadrature.hpp"
#include "hyperdecay/spectral.hpp"

namespace hyperdecay {

/// Field coupling f(mu^2), stored as a function of mu >= 0.
class FieldCoupling {
 public:
  /// f(mu^2) = sqrt(2 mu) r(mu^2), so that f^2 = sigma.
  static FieldCoupling matched(const SpectralDensity& sigma);
  /// Monotone cubic through non-negative samples; zero outside the grid.
  static FieldCoupling tabulated(std::vector<double> mu, std::vector<double> f);
  static FieldCoupling zero();

  double operator()(double mu) const { return f_(mu); }
  bool is_zero() const { return zero_; }

 private:
  FieldCoupling(std::function<double(double)> f, bool zero)
      : f_(std::move(f)), zero_(zero) {}
  std::function<double(double)> f_;
  bool zero_;
};

/// sqrt(2 mu) r_weight(sigma, mu). Rejects the point mass and the full-line
/// Breit-Wigner (r is defined for mu > 0 only).
FieldCoupling coupling_matched(const SpectralDensity& sigma);

/// A(s, dtau) = integral dmu^2 |f|^2 / (2E) exp(i E dtau), E = sqrt(mu^2 + s),
/// over the support of sigma.
std::complex<double> pair_contribution(const FieldCoupling& f,
                                       const SpectralDensity& sigma, double s,
                                       double dtau,
                                       const QuadratureConfig& cfg = {});

/// B(s) = |integral dmu^2 r f / sqrt(2E)|^2
double projection_weight(const FieldCoupling& f, const SpectralDensity& sigma,
                         double s, const QuadratureConfig& cfg = {});

/// I_s(-dtau) B(s)
std::complex<double> projected_contribution(const FieldCoupling& f,
                                            const SpectralDensity& sigma,
                                            double s, double dtau,
                                            const QuadratureConfig& cfg = {});

/// pair_contribution - projected_contribution. Vanishes at s = 0 for the
/// matched coupling and nowhere else.
std::complex<double> residual(const FieldCoupling& f,
                              const SpectralDensity& sigma, double s,
                              double dtau, const QuadratureConfig& cfg = {});

}  // namespace hyperdecay

#endif  // HYPERDECAY_TWOPOINT_HPP
