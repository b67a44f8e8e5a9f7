#ifndef HYPERDECAY_SURVIVAL_HPP
#define HYPERDECAY_SURVIVAL_HPP

// Survival amplitudes of single-parent momentum eigenstates,
//
//   I_s(tau) = integral dmu sigma(mu) exp(-i tau sqrt(mu^2 + s)),
//
// with s = -p^2 >= 0 the squared momentum in the rest frame of the
// hyperplane normal. hbar = c = 1 throughout; tau is in inverse-energy units.

#include <complex>
#include <optional>
#include <vector>

#include "hyperdecay/minkowski.hpp"
#include "hyperdecay/quadrature.hpp"
#include "hyperdecay/spectral.hpp"

namespace hyperdecay {

/// Momentum eigenvalue orthogonal to a hyperplane normal. Only the invariant
/// s = -p.p enters any survival quantity.
class SPMomentum {
 public:
  explicit SPMomentum(double s);
  /// Checks eta.p = 0 (1e-12, relative to the component scale) and derives s.
  SPMomentum(const FourVectord& p, const Hyperplaned& plane);

  double s() const { return s_; }
  const std::optional<FourVectord>& vector() const { return p_; }
  const std::optional<Hyperplaned>& plane() const { return plane_; }

 private:
  double s_;
  std::optional<FourVectord> p_;
  std::optional<Hyperplaned> plane_;
};

/// sqrt(mu^2 + s)
double energy(double mu, double s);

struct AmplitudeResult {
  std::complex<double> value;
  double error = 0.0;
  /// Probability mass dropped by a model whose support had to be cut for
  /// quadrature (full-line Breit-Wigner at s > 0); zero otherwise.
  double truncation_error = 0.0;
};

AmplitudeResult survival_amplitude(const SpectralDensity& sigma, double s,
                                   double tau,
                                   const QuadratureConfig& cfg = {});

AmplitudeResult survival_amplitude(const SpectralDensity& sigma,
                                   const SPMomentum& p, double tau,
                                   const QuadratureConfig& cfg = {});

/// |I_s(tau)|^2
double survival_probability(const SpectralDensity& sigma, double s, double tau,
                            const QuadratureConfig& cfg = {});

/// The density actually integrated for a given s: the model itself, or the
/// default-window truncation of a full-line Breit-Wigner when s > 0.
SpectralDensity quadrature_density(const SpectralDensity& sigma, double s);

/// Panel breaks for integrands sigma(mu) exp(+-i E tau) over a finite
/// support: model breakpoints refined so each panel spans at most
/// (panel nodes / points_per_period) oscillation periods.
std::vector<double> oscillatory_breaks(const SpectralDensity& sigma, double s,
                                       double tau, const QuadratureConfig& cfg);

}  // namespace hyperdecay

#endif  // HYPERDECAY_SURVIVAL_HPP
