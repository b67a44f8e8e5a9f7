#ifndef HYPERDECAY_PACKET_HPP
#define HYPERDECAY_PACKET_HPP

// Momentum-space wave packets psi(p) of single-parent states on a
// hyperplane, their survival quantities, and their transformation under
// inhomogeneous Lorentz transformations.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <variant>
#include <vector>

#include "hyperdecay/minkowski.hpp"
#include "hyperdecay/quadrature.hpp"
#include "hyperdecay/spectral.hpp"
#include "hyperdecay/survival.hpp"

namespace hyperdecay {

/// |psi(k)|^2 is the normal density with mean `center` and standard
/// deviation `width` per axis; psi itself is real and positive.
struct GaussianProfile {
  ThreeVectord center;
  double width;
};

/// Complex samples on a Cartesian grid, x-major ordering
/// values[(i * ny + j) * nz + k]. Trilinear between samples, zero outside.
struct TabulatedProfile {
  std::array<std::vector<double>, 3> axes;
  std::vector<std::complex<double>> values;
};

/// Accuracy of the packet integrals over d^3k. Gaussian profiles reduce
/// to an adaptive radial integral; tabulated profiles use their own grid.
struct PacketRule {
  double rel_tol = 1e-9;    ///< relative to the L1 norm of the integrand
  int initial_panels = 32;  ///< uniform radial panels before refinement
  double radial_cutoff = 12.0;  ///< integrate |k - |center|| <= cutoff width
};

class MomentumPacket {
 public:
  using Profile = std::variant<GaussianProfile, TabulatedProfile>;

  static MomentumPacket gaussian(const Hyperplaned& plane,
                                 const ThreeVectord& center, double width);
  /// Samples are rescaled to unit norm under the trapezoid rule.
  static MomentumPacket tabulated(const Hyperplaned& plane,
                                  TabulatedProfile profile);

  const Hyperplaned& hyperplane() const { return plane_; }
  const Profile& profile() const { return profile_; }

  /// Accumulated transformation: psi(p) = base(frame^-1 p) exp(i p.translation).
  const LorentzTransformd& frame() const { return frame_; }
  const FourVectord& translation() const { return translation_; }

  /// psi at an SP momentum p (eta.p = 0 required).
  std::complex<double> operator()(const FourVectord& p) const;

  /// psi as a function of the momentum 3-vector in the rest frame of the
  /// normal; |psi|^2 d^3k is the invariant measure.
  std::complex<double> rest_profile(const ThreeVectord& k) const;

  /// Integral of |psi|^2 g(|k|^2) d^3k.
  template <typename T, typename G>
  T average_over_s(G&& g, const PacketRule& rule = {}) const;

  double norm(const PacketRule& rule = {}) const {
    return average_over_s<double>([](double) { return 1.0; }, rule);
  }

 private:
  MomentumPacket(const Hyperplaned& plane, Profile profile);
  friend MomentumPacket transform_packet(const MomentumPacket& psi,
                                         const LorentzTransformd& L,
                                         const FourVectord& a);

  Hyperplaned plane_;
  Profile profile_;
  LorentzTransformd frame_;
  FourVectord translation_ = FourVectord::Zero();
};

/// psi_{L,a}(p) = psi(L^-1 p) exp(i p.a), carried onto the image hyperplane.
MomentumPacket transform_packet(const MomentumPacket& psi,
                                const LorentzTransformd& L,
                                const FourVectord& a);

/// Integral of |psi(p)|^2 I_s(p)(tau) over the hyperplane momenta.
std::complex<double> packet_survival_amplitude(const MomentumPacket& psi,
                                               const SpectralDensity& sigma,
                                               double tau,
                                               const QuadratureConfig& cfg = {},
                                               const PacketRule& rule = {});

/// Integral of |psi(p)|^2 |I_s(p)(tau)|^2: survival against decay proper.
double packet_decay_survival_probability(const MomentumPacket& psi,
                                         const SpectralDensity& sigma,
                                         double tau,
                                         const QuadratureConfig& cfg = {},
                                         const PacketRule& rule = {});

/// Amplitude for 4-momentum q in the state |psi; eta, tau> where (eta, tau)
/// is the packet's hyperplane:
///   psi(q - eta (eta.q)) r(q^2) sqrt(2 eta.q) exp(i (eta.q) tau).
/// Zero when sqrt(q^2) is outside the spectrum; throws for non-future-
/// timelike q.
std::complex<double> fourmomentum_amplitude(const MomentumPacket& psi,
                                            const SpectralDensity& sigma,
                                            const FourVectord& q);

/// Product grid over lab-frame 4-momenta. A single-node axis is a slice.
struct MomentumGrid {
  std::array<std::vector<double>, 4> axes;
};

/// Trapezoid-rule L2 distance between |xi_a(q)|^2 and |xi_b(q)|^2 over the
/// grid. Points that are not future timelike contribute zero density.
double xi_density_l2_distance(const MomentumPacket& a,
                              const MomentumPacket& b,
                              const SpectralDensity& sigma,
                              const MomentumGrid& grid);

// --- implementation --------------------------------------------------------

namespace detail {
std::vector<double> trapezoid_weights(const std::vector<double>& x);

/// Radial density of a Gaussian profile: 4 pi k^2 times the angular mean
/// of |psi|^2, i.e. the distribution of |k|.
double gaussian_radial_density(double k, double center_norm, double width);

}  // namespace detail

template <typename T, typename G>
T MomentumPacket::average_over_s(G&& g, const PacketRule& rule) const {
  if (const auto* gp = std::get_if<GaussianProfile>(&profile_)) {
    // g depends on |k| only, so the angular integral is done in closed form.
    const double c = gp->center.norm(), w = gp->width;
    const double lo = std::max(0.0, c - rule.radial_cutoff * w);
    const double hi = c + rule.radial_cutoff * w;
    const auto breaks = uniform_breaks(lo, hi, (hi - lo) / rule.initial_panels);
    AdaptiveOptions opt;
    opt.rel_tol = rule.rel_tol;
    return integrate_adaptive<T>(
               [&](double k) {
                 return detail::gaussian_radial_density(k, c, w) * g(k * k);
               },
               breaks, opt)
        .value;
  }
  const auto& tp = std::get<TabulatedProfile>(profile_);
  const auto wx = detail::trapezoid_weights(tp.axes[0]);
  const auto wy = detail::trapezoid_weights(tp.axes[1]);
  const auto wz = detail::trapezoid_weights(tp.axes[2]);
  const std::size_t ny = tp.axes[1].size(), nz = tp.axes[2].size();
  T sum{};
  for (std::size_t i = 0; i < wx.size(); ++i) {
    for (std::size_t j = 0; j < wy.size(); ++j) {
      for (std::size_t l = 0; l < wz.size(); ++l) {
        const double dens = std::norm(tp.values[(i * ny + j) * nz + l]);
        if (dens == 0.0) continue;
        const double s = tp.axes[0][i] * tp.axes[0][i] +
                         tp.axes[1][j] * tp.axes[1][j] +
                         tp.axes[2][l] * tp.axes[2][l];
        sum += (wx[i] * wy[j] * wz[l] * dens) * g(s);
      }
    }
  }
  return sum;
}

}  // namespace hyperdecay

#endif  // HYPERDECAY_PACKET_HPP
