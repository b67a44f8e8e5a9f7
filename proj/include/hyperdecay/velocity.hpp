#ifndef HYPERDECAY_VELOCITY_HPP
#define HYPERDECAY_VELOCITY_HPP

// Velocity eigenstates: the p = 0 SP states of hyperplanes tilted to the
// 4-velocity. Their lifetime is the interval between parallel hyperplanes,
// contracted by sqrt(1 - u^2) rather than dilated.

#include <complex>

#include "hyperdecay/lifetime.hpp"
#include "hyperdecay/minkowski.hpp"
#include "hyperdecay/quadrature.hpp"
#include "hyperdecay/spectral.hpp"

namespace hyperdecay {

/// (1, u) / sqrt(1 - u^2); throws DomainError for |u| >= 1.
FourVectord four_velocity(const ThreeVectord& u);

/// I_0(t / sqrt(1 - u^2))
std::complex<double> contracted_survival(const SpectralDensity& sigma,
                                         const ThreeVectord& u, double t,
                                         const QuadratureConfig& cfg = {});

/// sqrt(1 - u^2) T_0 with T_0 the closed-form rest lifetime.
LifetimeResult contracted_lifetime(const SpectralDensity& sigma,
                                   const ThreeVectord& u);

struct Fig2Intervals {
  double between_planes;  ///< T  = T0 / v0, the physical interval
  double along_normal;    ///< T' = v0 T0
};

Fig2Intervals fig2_intervals(double t0, const ThreeVectord& u);

/// Integral of sigma(mu) mu^-3; the velocity-state normalization is its
/// inverse square root.
double velocity_norm_factor(const SpectralDensity& sigma);

}  // namespace hyperdecay

#endif  // HYPERDECAY_VELOCITY_HPP
