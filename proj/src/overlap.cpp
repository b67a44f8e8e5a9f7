#include "hyperdecay/overlap.hpp"

#include <algorithm>
#include <cmath>

#include "hyperdecay/errors.hpp"

namespace hyperdecay {

namespace {

constexpr double kDegenerate = 1e-12;

double gram_defect(const FourVectord& eta, const FourVectord& eta2) {
  const double a = mdot(eta, eta2);
  const double d = a * a - 1.0;
  if (!(d >= kDegenerate) || !(a > 0.0)) {
    throw DomainError("overlap: hyperplane normals coincide (degenerate)");
  }
  return d;
}

double momentum_scale(const OverlapConfig& cfg) {
  return std::max(cfg.p.cwiseAbs().maxCoeff(), cfg.p2.cwiseAbs().maxCoeff());
}

}  // namespace

void OverlapConfig::validate() const {
  gram_defect(h.normal(), h2.normal());
  const double scale = momentum_scale(*this);
  if (scale == 0.0) {
    throw DomainError("overlap: p and p2 both vanish");
  }
  if (std::abs(mdot(p, h.normal())) > 1e-12 * scale ||
      std::abs(mdot(p2, h2.normal())) > 1e-12 * scale) {
    throw DomainError("overlap: momentum not orthogonal to its normal");
  }
}

PlaneUnitVectors plane_unit_vectors(const FourVectord& eta,
                                    const FourVectord& eta2) {
  const double a = mdot(eta, eta2);
  const double root = std::sqrt(gram_defect(eta, eta2));
  return {(eta2 - a * eta) / root, (eta - a * eta2) / root};
}

FourVectord transverse_part(const FourVectord& v, const FourVectord& eta,
                            const FourVectord& eta2) {
  const double a = mdot(eta, eta2);
  const double d = gram_defect(eta, eta2);
  const double b1 = mdot(eta, v), b2 = mdot(eta2, v);
  // Inverse Gram matrix of (eta, eta2) is [[1, -a], [-a, 1]] / (1 - a^2).
  const double c1 = (a * b2 - b1) / d;
  const double c2 = (a * b1 - b2) / d;
  return v - c1 * eta - c2 * eta2;
}

double SharedMomentum::spread() const {
  double m = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      m = std::max(m, (forms[i] - forms[j]).cwiseAbs().maxCoeff());
    }
  }
  return m;
}

SharedMomentum shared_momentum(const OverlapConfig& cfg) {
  cfg.validate();
  const FourVectord& eta = cfg.h.normal();
  const FourVectord& eta2 = cfg.h2.normal();
  const double a = mdot(eta, eta2);
  const double d = a * a - 1.0;
  const double eta_p2 = mdot(eta, cfg.p2);
  const double eta2_p = mdot(eta2, cfg.p);

  SharedMomentum out;
  out.eta_q = -(eta_p2 + a * eta2_p) / d;
  out.eta2_q = -(eta2_p + a * eta_p2) / d;
  out.forms[0] = cfg.p + out.eta_q * eta;
  out.forms[1] = cfg.p2 + out.eta2_q * eta2;
  out.forms[2] = transverse_part(cfg.p, eta, eta2) -
                 (eta2 * eta2_p + eta * eta_p2) / d;
  out.q = out.forms[0];
  return out;
}

bool transverse_match(const OverlapConfig& cfg) {
  cfg.validate();
  const FourVectord& eta = cfg.h.normal();
  const FourVectord& eta2 = cfg.h2.normal();
  const FourVectord diff =
      transverse_part(cfg.p, eta, eta2) - transverse_part(cfg.p2, eta, eta2);
  return std::sqrt(std::max(0.0, -msquare(diff))) <= 1e-10 * momentum_scale(cfg);
}

namespace {

bool accessible_q(const FourVectord& q, const SpectralDensity& sigma) {
  const double q2 = msquare(q);
  return q2 > 0.0 && q(0) > 0.0 && sigma.support().contains(std::sqrt(q2));
}

std::complex<double> reduced_kernel(const OverlapConfig& cfg,
                                    const SharedMomentum& sm,
                                    const SpectralDensity& sigma) {
  const double a = mdot(cfg.h.normal(), cfg.h2.normal());
  const double mu = std::sqrt(msquare(sm.q));
  const double r2 = sigma(mu) / (2.0 * mu);
  const double pref =
      2.0 * std::sqrt(sm.eta_q * sm.eta2_q) / std::sqrt(a * a - 1.0);
  return pref * r2 *
         std::polar(1.0, sm.eta_q * cfg.h.offset() - sm.eta2_q * cfg.h2.offset());
}

}  // namespace

bool accessibility(const OverlapConfig& cfg, const SpectralDensity& sigma) {
  return accessible_q(shared_momentum(cfg).q, sigma);
}

std::complex<double> reduced_inner_product(const OverlapConfig& cfg,
                                           const SpectralDensity& sigma) {
  if (sigma.is_point_mass()) {
    throw DomainError("reduced_inner_product: point mass has no density");
  }
  const auto sm = shared_momentum(cfg);
  if (!transverse_match(cfg) || !accessible_q(sm.q, sigma)) return 0.0;
  return reduced_kernel(cfg, sm, sigma);
}

OverlapResult evaluate_overlap(const OverlapConfig& cfg,
                               const SpectralDensity& sigma) {
  OverlapResult out{plane_unit_vectors(cfg.h.normal(), cfg.h2.normal()),
                    shared_momentum(cfg), transverse_match(cfg), false, 0.0};
  out.accessible = accessible_q(out.shared.q, sigma);
  if (out.transverse_match && out.accessible) {
    out.amplitude = reduced_kernel(cfg, out.shared, sigma);
  }
  return out;
}

}  // namespace hyperdecay
