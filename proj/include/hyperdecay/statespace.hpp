#ifndef HYPERDECAY_STATESPACE_HPP
#define HYPERDECAY_STATESPACE_HPP

// A finite mass-grid surrogate for the SP-momentum eigenstates: the state
// sum_i c_i |mu_i> with |c_i|^2 ~ sigma(mu_i) dmu_i. Survival amplitudes and
// the component decompositions become finite sums, which makes this module
// a brute-force oracle for the quadrature paths.

#include <complex>
#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "hyperdecay/spectral.hpp"

namespace hyperdecay {

struct DiscreteState {
  Eigen::VectorXd mu;   ///< strictly increasing
  Eigen::VectorXcd c;   ///< unit norm
  double s = 0.0;

  Eigen::Index size() const { return mu.size(); }
};

enum class MassGrid {
  uniform,       ///< equal spacing over the support, trapezoid weights
  peak_refined,  ///< nodes split between Breit-Wigner angle and linear
};

/// n = 1 gives the single-mass surrogate at reference_mass(). Requires a
/// finite support for n >= 2; peak_refined requires a Breit-Wigner model.
DiscreteState from_spectral(const SpectralDensity& sigma, double s,
                            std::size_t n, MassGrid grid = MassGrid::uniform);

/// c_i -> c_i exp(-i sqrt(mu_i^2 + s) tau)
DiscreteState evolve(const DiscreteState& state, double tau);

/// <state | evolve(state, tau)>
std::complex<double> survival_oracle(const DiscreteState& state, double tau);

/// A psi = psi mean + orthogonal spread, with <psi|orthogonal> = 0 and a
/// unit-norm orthogonal part. `orthogonal` is empty when spread < 1e-13.
template <typename Scalar>
struct ComponentDecomposition {
  Scalar mean;
  double spread;
  std::optional<DiscreteState> orthogonal;
};

inline constexpr double kEigenstateSpread = 1e-13;

/// `diagonal` holds the eigenvalues of an operator diagonal on the grid.
template <typename Derived>
ComponentDecomposition<typename Derived::Scalar> component_decomposition(
    const Eigen::MatrixBase<Derived>& diagonal, const DiscreteState& state) {
  using Scalar = typename Derived::Scalar;
  const Eigen::VectorXcd a_psi =
      diagonal.template cast<std::complex<double>>().cwiseProduct(state.c);
  const std::complex<double> mean_c = state.c.dot(a_psi);  // conjugates lhs
  Eigen::VectorXcd rest = a_psi - mean_c * state.c;
  const double spread = rest.norm();

  ComponentDecomposition<Scalar> out{};
  if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
    out.mean = mean_c;
  } else {
    out.mean = mean_c.real();
  }
  out.spread = spread;
  if (spread >= kEigenstateSpread) {
    out.orthogonal = DiscreteState{state.mu, rest / spread, state.s};
  }
  return out;
}

/// Decomposition for diag(mu_i^2); mean is kappa^2 = <P^2>.
ComponentDecomposition<double> mass_squared_decomposition(
    const DiscreteState& state);

struct DecayDecomposition {
  std::complex<double> survival;
  std::optional<DiscreteState> orthogonal;
  double weight;  ///< sqrt(1 - |survival|^2)
};

/// evolve(state, tau) = state survival + orthogonal weight.
DecayDecomposition decay_decomposition(const DiscreteState& state, double tau);

}  // namespace hyperdecay

#endif  // HYPERDECAY_STATESPACE_HPP
