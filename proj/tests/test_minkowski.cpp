#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperdecay/errors.hpp"
#include "hyperdecay/minkowski.hpp"
#include "random_geometry.hpp"

using namespace hyperdecay;

TEST_CASE("mdot has signature +---") {
  CHECK(mdot(FourVectord(1, 0, 0, 0), FourVectord(1, 0, 0, 0)) == 1.0);
  CHECK(mdot(FourVectord(0, 1, 0, 0), FourVectord(0, 1, 0, 0)) == -1.0);
  CHECK(mdot(FourVectord(1, 1, 0, 0), FourVectord(1, 1, 0, 0)) == 0.0);
  const FourVectord a(2, 3, -1, 0.5), b(-1, 4, 2, 7);
  CHECK(mdot(a, b) == doctest::Approx(mdot(b, a)));
  CHECK(mdot(a, b) == doctest::Approx(-2 - 12 + 2 - 3.5));
}

TEST_CASE("mdot works for other scalar types") {
  const FourVector<float> a(1, 2, 0, 0);
  CHECK(msquare(a) == -3.0f);
}

TEST_CASE("boost_from_velocity") {
  CHECK(boost_from_velocity(ThreeVectord(ThreeVectord::Zero())).matrix().isIdentity(0.0));

  const FourVectord img = boost_from_velocity(ThreeVectord(0.6, 0, 0)) * time_axis();
  CHECK(img(0) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(img(1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(img(2) == 0.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> speed(0.0, 0.999);
  for (int i = 0; i < 200; ++i) {
    const ThreeVectord u = speed(rng) * testgeo::random_direction(rng);
    const auto L = boost_from_velocity(u);
    CHECK(L.metric_defect() <= 1e-12 * L.matrix().cwiseAbs().maxCoeff() *
                                   L.matrix().cwiseAbs().maxCoeff());
    CHECK(L.is_proper_orthochronous(1e-9));
    const FourVectord v = L * time_axis();
    const double g = 1.0 / std::sqrt(1.0 - u.squaredNorm());
    CHECK((v - g * FourVectord(1, u(0), u(1), u(2))).cwiseAbs().maxCoeff() <=
          1e-12 * g);
  }

  CHECK_THROWS_AS(boost_from_velocity(ThreeVectord(1, 0, 0)), DomainError);
  CHECK_THROWS_AS(boost_from_velocity(ThreeVectord(0.8, 0.7, 0)), DomainError);
}

TEST_CASE("boost_from_velocity stays accurate near |u| = 1") {
  const double u = 1.0 - 1e-9;
  const FourVectord v = boost_from_velocity(ThreeVectord(u, 0, 0)) * time_axis();
  CHECK(msquare(v) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("boost_to_normal") {
  CHECK(boost_to_normal(time_axis()).matrix().isIdentity(0.0));

  const double zeta = 0.7;
  const auto B = boost_to_normal(FourVectord(std::cosh(zeta), std::sinh(zeta), 0, 0));
  const auto ref = boost_from_velocity(ThreeVectord(std::tanh(zeta), 0, 0));
  CHECK((B.matrix() - ref.matrix()).cwiseAbs().maxCoeff() <= 1e-12);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const FourVectord eta = testgeo::random_unit_timelike(rng);
    const auto Bi = boost_to_normal(eta);
    CHECK((Bi * time_axis() - eta).cwiseAbs().maxCoeff() <=
          1e-12 * eta.cwiseAbs().maxCoeff());
    const Eigen::Matrix3d spatial = Bi.matrix().bottomRightCorner<3, 3>();
    CHECK((spatial - spatial.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * eta(0));
  }

  CHECK_THROWS_AS(boost_to_normal(FourVectord(2, 0, 0, 0)), DomainError);
  CHECK_THROWS_AS(boost_to_normal(FourVectord(-1, 0, 0, 0)), DomainError);
}

TEST_CASE("boost_to_normal agrees with boost_from_velocity") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> speed(0.0, 0.99);
  for (int i = 0; i < 200; ++i) {
    const ThreeVectord u = speed(rng) * testgeo::random_direction(rng);
    const double g = 1.0 / std::sqrt(1.0 - u.squaredNorm());
    const FourVectord v = g * FourVectord(1, u(0), u(1), u(2));
    const auto a = boost_to_normal(v), b = boost_from_velocity(u);
    CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() <= 1e-12 * g * g);
  }
}

TEST_CASE("Lorentz transforms preserve mdot") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n;
  for (int i = 0; i < 500; ++i) {
    const auto L = testgeo::random_lorentz(rng);
    const FourVectord a(n(rng), n(rng), n(rng), n(rng));
    const FourVectord b(n(rng), n(rng), n(rng), n(rng));
    const double scale = (L * a).norm() * (L * b).norm() + a.norm() * b.norm();
    CHECK(std::abs(mdot(L * a, L * b) - mdot(a, b)) <= 1e-12 * scale);
    CHECK(((L.inverse() * L).matrix() - Eigen::Matrix4d::Identity())
              .cwiseAbs()
              .maxCoeff() <= 1e-12 * L.matrix().squaredNorm());
  }
}

TEST_CASE("Hyperplane normalizes and validates its normal") {
  const Hyperplaned h(FourVectord(1.0 + 1e-8, 0, 0, 0), 2.0);
  CHECK(msquare(h.normal()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h.offset() == 2.0);
  CHECK(h.contains(FourVectord(2.0, 5.0, -1.0, 3.0)));
  CHECK_THROWS_AS(Hyperplaned(FourVectord(1.1, 0, 0, 0), 0.0), DomainError);
  CHECK_THROWS_AS(Hyperplaned(FourVectord(-1, 0, 0, 0), 0.0), DomainError);
  CHECK(Hyperplaned::instantaneous(3.0).normal() == time_axis());
}

TEST_CASE("transform_hyperplane") {
  const auto h = Hyperplaned::instantaneous(1.5);
  const auto same = transform_hyperplane(LorentzTransformd::identity(),
                                         FourVectord::Zero().eval(), h);
  CHECK(same.normal() == h.normal());
  CHECK(same.offset() == h.offset());

  const auto shifted = transform_hyperplane(LorentzTransformd::identity(),
                                            FourVectord(0.25, 0, 0, 0), h);
  CHECK(shifted.offset() == doctest::Approx(1.75));

  const auto B = boost_from_velocity(ThreeVectord(0, 0.6, 0));
  const auto tilted = transform_hyperplane(B, FourVectord::Zero().eval(), h);
  CHECK((tilted.normal() - B * time_axis()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(tilted.offset() == 1.5);

  // Every event of h maps onto an event of the image.
  std::mt19937_64 rng(19);
  std::normal_distribution<double> n;
  for (int i = 0; i < 100; ++i) {
    const auto L = testgeo::random_lorentz(rng, 1.0);
    const FourVectord a(n(rng), n(rng), n(rng), n(rng));
    const Hyperplaned g(testgeo::random_unit_timelike(rng, 1.0), n(rng));
    FourVectord x(n(rng), n(rng), n(rng), n(rng));
    x += (g.offset() - mdot(g.normal(), x)) * g.normal();  // put x on g
    const auto img = transform_hyperplane(L, a, g);
    CHECK(img.contains(L * x + a, 1e-10 * (1.0 + (L * x + a).norm())));
  }
}

TEST_CASE("decompose") {
  const auto d0 = decompose(FourVectord(5, 1, 2, 3), time_axis());
  CHECK(d0.eta_q == 5.0);
  CHECK(d0.p == FourVectord(0, 1, 2, 3));

  const FourVectord eta = boost_from_rapidity(ThreeVectord(1, 1, 0), 0.8) * time_axis();
  const auto self = decompose(eta, eta);
  CHECK(self.eta_q == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(self.p.cwiseAbs().maxCoeff() <= 1e-15);

  std::mt19937_64 rng(23);
  std::normal_distribution<double> n;
  for (int i = 0; i < 500; ++i) {
    const FourVectord e = testgeo::random_unit_timelike(rng);
    const FourVectord q(n(rng), n(rng), n(rng), n(rng));
    const auto d = decompose(q, e);
    CHECK(std::abs(mdot(d.p, e)) <= 1e-12);
    CHECK((d.p + d.eta_q * e - q).cwiseAbs().maxCoeff() <= 1e-12 * e(0) * e(0));
  }
}
