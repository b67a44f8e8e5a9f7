#ifndef HYPERDECAY_MINKOWSKI_HPP
#define HYPERDECAY_MINKOWSKI_HPP

// Four-vectors, proper orthochronous Lorentz transformations and spacelike
// hyperplanes under the (+,-,-,-) metric. Natural units, c = 1.

#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "hyperdecay/errors.hpp"

namespace hyperdecay {

template <typename Scalar>
using FourVector = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
using ThreeVector = Eigen::Matrix<Scalar, 3, 1>;

using FourVectord = FourVector<double>;
using ThreeVectord = ThreeVector<double>;

/// g = diag(1, -1, -1, -1)
template <typename Scalar = double>
Eigen::Matrix<Scalar, 4, 4> metric() {
  return Eigen::Matrix<Scalar, 4, 1>(1, -1, -1, -1).asDiagonal();
}

/// Minkowski inner product a^0 b^0 - a.b
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar mdot(const Eigen::MatrixBase<DerivedA>& a,
                               const Eigen::MatrixBase<DerivedB>& b) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedA, 4);
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedB, 4);
  return a(0) * b(0) - a.template tail<3>().dot(b.template tail<3>());
}

template <typename Derived>
typename Derived::Scalar msquare(const Eigen::MatrixBase<Derived>& a) {
  return mdot(a, a);
}

template <typename Scalar = double>
FourVector<Scalar> time_axis() {
  return FourVector<Scalar>(1, 0, 0, 0);
}

/// Homogeneous proper orthochronous Lorentz transformation acting on
/// contravariant components.
template <typename Scalar>
class LorentzTransform {
 public:
  using Matrix = Eigen::Matrix<Scalar, 4, 4>;

  LorentzTransform() : m_(Matrix::Identity()) {}
  explicit LorentzTransform(const Matrix& m) : m_(m) {}

  static LorentzTransform identity() { return LorentzTransform(); }

  /// Spatial rotation; `r` must be a proper 3x3 rotation matrix.
  static LorentzTransform rotation(const Eigen::Matrix<Scalar, 3, 3>& r) {
    Matrix m = Matrix::Identity();
    m.template bottomRightCorner<3, 3>() = r;
    return LorentzTransform(m);
  }

  const Matrix& matrix() const { return m_; }

  FourVector<Scalar> operator*(const FourVector<Scalar>& v) const {
    return m_ * v;
  }
  LorentzTransform operator*(const LorentzTransform& other) const {
    return LorentzTransform(m_ * other.m_);
  }

  /// L^-1 = g L^T g
  LorentzTransform inverse() const {
    const Matrix g = metric<Scalar>();
    return LorentzTransform(g * m_.transpose() * g);
  }

  /// max |(L^T g L - g)_ij|
  Scalar metric_defect() const {
    const Matrix g = metric<Scalar>();
    return (m_.transpose() * g * m_ - g).cwiseAbs().maxCoeff();
  }

  bool is_proper_orthochronous(Scalar tol = Scalar(1e-12)) const {
    using std::abs;
    return metric_defect() <= tol && abs(m_.determinant() - Scalar(1)) <= tol &&
           m_(0, 0) >= Scalar(1) - tol;
  }

 private:
  Matrix m_;
};

using LorentzTransformd = LorentzTransform<double>;

namespace detail {

// Pure boost with gamma = n0 and gamma*beta vector = nvec; requires
// n0^2 - |nvec|^2 = 1. The spatial block delta_ij + n_i n_j / (1 + n0)
// avoids the (gamma - 1)/beta^2 cancellation at small speeds.
template <typename Scalar>
LorentzTransform<Scalar> boost_from_unit_timelike(
    Scalar n0, const ThreeVector<Scalar>& nvec) {
  Eigen::Matrix<Scalar, 4, 4> m;
  m(0, 0) = n0;
  m.template block<1, 3>(0, 1) = nvec.transpose();
  m.template block<3, 1>(1, 0) = nvec;
  m.template bottomRightCorner<3, 3>() =
      Eigen::Matrix<Scalar, 3, 3>::Identity() +
      nvec * nvec.transpose() / (Scalar(1) + n0);
  return LorentzTransform<Scalar>(m);
}

}  // namespace detail

/// Pure boost taking the rest four-velocity (1,0,0,0) to (1,u)/sqrt(1-u^2).
///
/// Built from the rapidity zeta = atanh|u| so that gamma and gamma*beta come
/// from cosh/sinh rather than 1/sqrt(1-u^2). Results are accurate to ~1e-12
/// relative for |u| <= 1 - 1e-9; |u| >= 1 is rejected.
template <typename Scalar>
LorentzTransform<Scalar> boost_from_velocity(const ThreeVector<Scalar>& u) {
  using std::atanh;
  using std::cosh;
  using std::sinh;
  const Scalar speed = u.norm();
  if (!(speed < Scalar(1))) {
    throw DomainError("boost_from_velocity: |u| must be < 1");
  }
  if (speed == Scalar(0)) {
    return LorentzTransform<Scalar>::identity();
  }
  const Scalar zeta = atanh(speed);
  const ThreeVector<Scalar> gamma_beta = (sinh(zeta) / speed) * u;
  return detail::boost_from_unit_timelike(cosh(zeta), gamma_beta);
}

/// Boost along a unit 3-direction by rapidity zeta.
template <typename Scalar>
LorentzTransform<Scalar> boost_from_rapidity(const ThreeVector<Scalar>& dir,
                                             Scalar zeta) {
  using std::cosh;
  using std::sinh;
  const Scalar n = dir.norm();
  if (!(n > Scalar(0))) {
    throw DomainError("boost_from_rapidity: zero direction");
  }
  return detail::boost_from_unit_timelike(cosh(zeta),
                                          ThreeVector<Scalar>(sinh(zeta) / n * dir));
}

/// Re-normalizes a nearly-unit future timelike vector. Anything further than
/// 1e-6 from unit norm is treated as a units mistake and rejected.
template <typename Scalar>
FourVector<Scalar> unit_timelike(const FourVector<Scalar>& eta) {
  using std::abs;
  using std::sqrt;
  const Scalar n2 = msquare(eta);
  if (!(abs(n2 - Scalar(1)) <= Scalar(1e-6))) {
    throw DomainError("normal is not unit timelike (|eta.eta - 1| > 1e-6)");
  }
  if (!(eta(0) > Scalar(0))) {
    throw DomainError("normal is not future pointing");
  }
  return eta / sqrt(n2);
}

/// The pure boost B with B (1,0,0,0) = eta.
template <typename Scalar>
LorentzTransform<Scalar> boost_to_normal(const FourVector<Scalar>& eta) {
  const FourVector<Scalar> n = unit_timelike(eta);
  return detail::boost_from_unit_timelike(n(0),
                                          ThreeVector<Scalar>(n.template tail<3>()));
}

/// The set of events x with eta.x = tau, eta a unit future timelike normal.
template <typename Scalar>
class Hyperplane {
 public:
  Hyperplane(const FourVector<Scalar>& normal, Scalar offset)
      : normal_(unit_timelike(normal)), offset_(offset) {}

  static Hyperplane instantaneous(Scalar t = Scalar(0)) {
    return Hyperplane(time_axis<Scalar>(), t);
  }

  const FourVector<Scalar>& normal() const { return normal_; }
  Scalar offset() const { return offset_; }

  bool contains(const FourVector<Scalar>& x, Scalar tol = Scalar(1e-12)) const {
    using std::abs;
    return abs(mdot(normal_, x) - offset_) <= tol;
  }

 private:
  FourVector<Scalar> normal_;
  Scalar offset_;
};

using Hyperplaned = Hyperplane<double>;

/// Image of h under x -> L x + a: (L eta, tau + a.(L eta)).
template <typename Scalar>
Hyperplane<Scalar> transform_hyperplane(const LorentzTransform<Scalar>& L,
                                        const FourVector<Scalar>& a,
                                        const Hyperplane<Scalar>& h) {
  const FourVector<Scalar> n = L * h.normal();
  return Hyperplane<Scalar>(n, h.offset() + mdot(a, n));
}

template <typename Scalar>
struct Decomposition {
  FourVector<Scalar> p;  ///< component orthogonal to eta
  Scalar eta_q;          ///< eta.q
};

/// q = p + eta (eta.q) with eta.p = 0.
template <typename Scalar>
Decomposition<Scalar> decompose(const FourVector<Scalar>& q,
                                const FourVector<Scalar>& eta) {
  const Scalar eq = mdot(eta, q);
  FourVector<Scalar> p = q - eq * eta;
  // One projection step removes the residual left by rounding in eq.
  p -= mdot(eta, p) * eta;
  return {p, eq};
}

}  // namespace hyperdecay

#endif  // HYPERDECAY_MINKOWSKI_HPP
