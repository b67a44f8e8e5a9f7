#include "hyperdecay/packet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperdecay/errors.hpp"

namespace hyperdecay {

namespace detail {

std::vector<double> trapezoid_weights(const std::vector<double>& x) {
  // A single node is a slice: unit weight.
  if (x.size() == 1) return {1.0};
  std::vector<double> w(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = 0.5 * (x[i + 1] - x[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  return w;
}

}  // namespace detail

namespace {

void check_axis(const std::vector<double>& x) {
  if (x.size() < 2) throw DomainError("tabulated packet: axis needs >= 2 points");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (!(x[i + 1] > x[i])) {
      throw DomainError("tabulated packet: axis must be strictly increasing");
    }
  }
}

// Index i with x[i] <= v < x[i+1] and the fractional offset; false outside.
bool locate(const std::vector<double>& x, double v, std::size_t& i, double& t) {
  if (v < x.front() || v > x.back()) return false;
  auto it = std::upper_bound(x.begin(), x.end(), v);
  i = (it == x.end()) ? x.size() - 2
                      : static_cast<std::size_t>(it - x.begin()) - 1;
  t = (v - x[i]) / (x[i + 1] - x[i]);
  return true;
}

std::complex<double> trilinear(const TabulatedProfile& tp,
                               const ThreeVectord& k) {
  std::array<std::size_t, 3> idx{};
  std::array<double, 3> frac{};
  for (int a = 0; a < 3; ++a) {
    if (!locate(tp.axes[a], k[a], idx[a], frac[a])) return 0.0;
  }
  const std::size_t ny = tp.axes[1].size(), nz = tp.axes[2].size();
  std::complex<double> v = 0.0;
  for (int c = 0; c < 8; ++c) {
    const std::size_t i = idx[0] + (c & 1);
    const std::size_t j = idx[1] + ((c >> 1) & 1);
    const std::size_t l = idx[2] + ((c >> 2) & 1);
    const double w = ((c & 1) ? frac[0] : 1.0 - frac[0]) *
                     (((c >> 1) & 1) ? frac[1] : 1.0 - frac[1]) *
                     (((c >> 2) & 1) ? frac[2] : 1.0 - frac[2]);
    if (w != 0.0) v += w * tp.values[(i * ny + j) * nz + l];
  }
  return v;
}

}  // namespace

MomentumPacket::MomentumPacket(const Hyperplaned& plane, Profile profile)
    : plane_(plane),
      profile_(std::move(profile)),
      frame_(boost_to_normal(plane.normal())) {}

MomentumPacket MomentumPacket::gaussian(const Hyperplaned& plane,
                                        const ThreeVectord& center,
                                        double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw DomainError("gaussian packet: width must be positive");
  }
  return MomentumPacket(plane, GaussianProfile{center, width});
}

MomentumPacket MomentumPacket::tabulated(const Hyperplaned& plane,
                                         TabulatedProfile profile) {
  std::size_t n = 1;
  for (const auto& axis : profile.axes) {
    check_axis(axis);
    n *= axis.size();
  }
  if (profile.values.size() != n) {
    throw DomainError("tabulated packet: value count does not match grid");
  }
  MomentumPacket psi(plane, std::move(profile));
  const double nrm = psi.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw DomainError("tabulated packet: zero or non-finite norm");
  }
  auto& tp = std::get<TabulatedProfile>(psi.profile_);
  const double scale = 1.0 / std::sqrt(nrm);
  for (auto& v : tp.values) v *= scale;
  return psi;
}

std::complex<double> MomentumPacket::rest_profile(const ThreeVectord& k) const {
  if (const auto* gp = std::get_if<GaussianProfile>(&profile_)) {
    const double w = gp->width;
    const double amp = std::pow(2.0 * std::numbers::pi * w * w, -0.75);
    return amp * std::exp(-(k - gp->center).squaredNorm() / (4.0 * w * w));
  }
  return trilinear(std::get<TabulatedProfile>(profile_), k);
}

std::complex<double> MomentumPacket::operator()(const FourVectord& p) const {
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  if (std::abs(mdot(p, plane_.normal())) > 1e-10 * scale) {
    throw DomainError("packet: momentum is not orthogonal to the normal");
  }
  const FourVectord k = frame_.inverse() * p;
  return rest_profile(k.tail<3>()) *
         std::polar(1.0, mdot(p, translation_));
}

namespace detail {

double gaussian_radial_density(double k, double c, double w) {
  // 4 pi k^2 (2 pi w^2)^{-3/2} exp(-(k - c)^2 / 2w^2) (1 - e^{-x}) / x with
  // x = 2kc / w^2; the last factor tends to 1 for a centred packet.
  const double x = 2.0 * k * c / (w * w);
  const double shell = x > 0.0 ? -std::expm1(-x) / x : 1.0;
  const double d = (k - c) / w;
  return 4.0 * std::numbers::pi * k * k *
         std::pow(2.0 * std::numbers::pi * w * w, -1.5) *
         std::exp(-0.5 * d * d) * shell;
}

}  // namespace detail

MomentumPacket transform_packet(const MomentumPacket& psi,
                                const LorentzTransformd& L,
                                const FourVectord& a) {
  MomentumPacket out = psi;
  out.plane_ = transform_hyperplane(L, a, psi.plane_);
  out.frame_ = L * psi.frame_;
  out.translation_ = L * psi.translation_ + a;
  return out;
}

std::complex<double> packet_survival_amplitude(const MomentumPacket& psi,
                                               const SpectralDensity& sigma,
                                               double tau,
                                               const QuadratureConfig& cfg,
                                               const PacketRule& rule) {
  return psi.average_over_s<std::complex<double>>(
      [&](double s) { return survival_amplitude(sigma, s, tau, cfg).value; },
      rule);
}

double packet_decay_survival_probability(const MomentumPacket& psi,
                                         const SpectralDensity& sigma,
                                         double tau,
                                         const QuadratureConfig& cfg,
                                         const PacketRule& rule) {
  return psi.average_over_s<double>(
      [&](double s) { return survival_probability(sigma, s, tau, cfg); },
      rule);
}

std::complex<double> fourmomentum_amplitude(const MomentumPacket& psi,
                                            const SpectralDensity& sigma,
                                            const FourVectord& q) {
  const double q2 = msquare(q);
  if (!(q2 > 0.0) || !(q(0) > 0.0)) {
    throw DomainError("fourmomentum_amplitude: q is not future timelike");
  }
  const double mu = std::sqrt(q2);
  if (!sigma.support().contains(mu)) return 0.0;
  const auto [p, eta_q] = decompose(q, psi.hyperplane().normal());
  return psi(p) * r_weight(sigma, mu) * std::sqrt(2.0 * eta_q) *
         std::polar(1.0, eta_q * psi.hyperplane().offset());
}

double xi_density_l2_distance(const MomentumPacket& a,
                              const MomentumPacket& b,
                              const SpectralDensity& sigma,
                              const MomentumGrid& grid) {
  std::array<std::vector<double>, 4> w;
  for (int i = 0; i < 4; ++i) w[i] = detail::trapezoid_weights(grid.axes[i]);
  auto density = [&](const MomentumPacket& psi, const FourVectord& q) {
    if (!(msquare(q) > 0.0) || !(q(0) > 0.0)) return 0.0;
    return std::norm(fourmomentum_amplitude(psi, sigma, q));
  };
  double sum = 0.0;
  for (std::size_t i0 = 0; i0 < w[0].size(); ++i0) {
    for (std::size_t i1 = 0; i1 < w[1].size(); ++i1) {
      for (std::size_t i2 = 0; i2 < w[2].size(); ++i2) {
        for (std::size_t i3 = 0; i3 < w[3].size(); ++i3) {
          const FourVectord q(grid.axes[0][i0], grid.axes[1][i1],
                              grid.axes[2][i2], grid.axes[3][i3]);
          const double d = density(a, q) - density(b, q);
          sum += w[0][i0] * w[1][i1] * w[2][i2] * w[3][i3] * d * d;
        }
      }
    }
  }
  return std::sqrt(sum);
}

}  // namespace hyperdecay
