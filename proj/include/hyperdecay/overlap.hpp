#ifndef HYPERDECAY_OVERLAP_HPP
#define HYPERDECAY_OVERLAP_HPP

// Inner products of SP-momentum eigenstates living on two intersecting
// hyperplanes. The delta functions admit at most one shared 4-momentum q;
// what remains is a reduced kernel whose tau dependence is a pure phase.

#include <array>
#include <complex>

#include "hyperdecay/minkowski.hpp"
#include "hyperdecay/spectral.hpp"

namespace hyperdecay {

/// |p; h> and |p2; h2>, with p orthogonal to h.normal() and p2 to
/// h2.normal().
struct OverlapConfig {
  Hyperplaned h;
  Hyperplaned h2;
  FourVectord p;
  FourVectord p2;

  /// Throws DomainError for coincident normals, broken orthogonality
  /// (1e-12 relative) or p = p2 = 0.
  void validate() const;
};

struct PlaneUnitVectors {
  FourVectord e;   ///< in the (eta, eta2) plane, orthogonal to eta
  FourVectord e2;  ///< in the (eta, eta2) plane, orthogonal to eta2
};

/// Throws DomainError when (eta.eta2)^2 - 1 < 1e-12.
PlaneUnitVectors plane_unit_vectors(const FourVectord& eta,
                                    const FourVectord& eta2);

/// Part of v orthogonal to both normals.
FourVectord transverse_part(const FourVectord& v, const FourVectord& eta,
                            const FourVectord& eta2);

struct SharedMomentum {
  FourVectord q;  ///< first form
  /// q from p and eta, from p2 and eta2, and from the transverse part of p
  /// with both normals.
  std::array<FourVectord, 3> forms;
  double eta_q;   ///< eta.q
  double eta2_q;  ///< eta2.q

  /// Largest entrywise difference between the forms.
  double spread() const;
};

SharedMomentum shared_momentum(const OverlapConfig& cfg);

/// The transverse parts of p and p2 agree to 1e-10 of the momentum scale.
bool transverse_match(const OverlapConfig& cfg);

/// q future timelike with sqrt(q^2) inside the support of sigma.
bool accessibility(const OverlapConfig& cfg, const SpectralDensity& sigma);

/// The inner product with its two-dimensional delta function removed:
///   2 sqrt((eta.q)(eta2.q)) / sqrt((eta.eta2)^2 - 1) |r(q^2)|^2
///     exp(i [(eta.q) tau - (eta2.q) tau2]).
/// Zero when the transverse parts differ or q is inaccessible.
std::complex<double> reduced_inner_product(const OverlapConfig& cfg,
                                           const SpectralDensity& sigma);

struct OverlapResult {
  PlaneUnitVectors units;
  SharedMomentum shared;
  bool transverse_match;
  bool accessible;
  std::complex<double> amplitude;
};

OverlapResult evaluate_overlap(const OverlapConfig& cfg,
                               const SpectralDensity& sigma);

}  // namespace hyperdecay

#endif  // HYPERDECAY_OVERLAP_HPP
