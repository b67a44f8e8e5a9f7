#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hyperdecay/errors.hpp"
#include "hyperdecay/statespace.hpp"
#include "hyperdecay/survival.hpp"
#include "oracles.hpp"

using namespace hyperdecay;

namespace {

DiscreteState two_level(double mu, double delta) {
  DiscreteState st;
  st.mu = Eigen::Vector2d(mu - delta, mu + delta);
  st.c = Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0);
  return st;
}

DiscreteState random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  DiscreteState st;
  st.mu = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0);
  st.c.resize(n);
  for (int i = 0; i < n; ++i) st.c(i) = {g(rng), g(rng)};
  st.c.normalize();
  return st;
}

}  // namespace

TEST_CASE("from_spectral") {
  const auto one = from_spectral(SpectralDensity::breit_wigner_truncated(100.0, 1.0), 0.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one.mu(0) == 100.0);
  CHECK(one.c(0) == std::complex<double>(1.0));

  const auto flat = from_spectral(SpectralDensity::tabulated({1.0, 2.0}, {1.0, 1.0}), 0.0, 2);
  CHECK(flat.c(0).real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(flat.c(1).real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));

  const auto tr = SpectralDensity::breit_wigner_truncated(100.0, 1.0);
  const auto st = from_spectral(tr, 0.0, 20001);
  CHECK(st.c.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(st.mu(0) == 50.0);
  CHECK(st.mu(20000) == 150.0);
  CHECK(st.c.cwiseAbs2().dot(st.mu.cwiseAbs2()) ==
        doctest::Approx(moment(tr, 2.0)).epsilon(1e-4));

  CHECK_THROWS_AS(from_spectral(SpectralDensity::point_mass(1.0), 0.0, 3), DomainError);
  CHECK_THROWS_AS(from_spectral(SpectralDensity::breit_wigner(1.0, 0.1), 0.0, 3), DomainError);
  CHECK_NOTHROW(from_spectral(SpectralDensity::point_mass(1.0), 0.0, 1));
}

TEST_CASE("evolution and the survival oracle") {
  const auto st = two_level(5.0, 0.25);
  CHECK((evolve(st, 0.0).c - st.c).norm() == 0.0);
  CHECK(std::abs(survival_oracle(st, 0.0) - 1.0) <= 1e-15);
  for (double tau : {0.3, 2.0, 7.1}) {
    CHECK(std::abs(survival_oracle(st, tau)) ==
          doctest::Approx(std::abs(std::cos(0.25 * tau))).epsilon(1e-13));
    CHECK(evolve(st, tau).c.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
  DiscreteState single;
  single.mu = Eigen::VectorXd::Constant(1, 3.0);
  single.c = Eigen::VectorXcd::Constant(1, 1.0);
  single.s = 16.0;
  const auto later = evolve(single, 2.0);
  CHECK(std::abs(later.c(0) - std::polar(1.0, -10.0)) <= 1e-15);

  // Unitarity: inner products survive a common evolution.
  std::mt19937_64 rng(17);
  const auto a = random_state(rng, 32), b = random_state(rng, 32);
  CHECK(std::abs(evolve(a, 1.7).c.dot(evolve(b, 1.7).c) - a.c.dot(b.c)) <= 1e-12);
}

TEST_CASE("discrete oracle against the quadrature amplitude") {
  const auto tr = SpectralDensity::breit_wigner_truncated(100.0, 1.0);
  const auto st = from_spectral(tr, 400.0, 20001);
  for (double tau = 0.0; tau <= 10.0; tau += 0.5) {
    CHECK(std::abs(survival_oracle(st, tau) - survival_amplitude(tr, 400.0, tau).value) <=
          1e-6);
  }
  // A narrow peak in a wide explicit window: uniform spacing (5e-3) is half
  // the width, refinement recovers quadrature accuracy.
  const auto narrow = SpectralDensity::breit_wigner_truncated(100.0, 0.01, 50.0, 150.0);
  const auto fine = from_spectral(narrow, 0.0, 20001, MassGrid::peak_refined);
  const auto flat = from_spectral(narrow, 0.0, 20001);
  CHECK(fine.c.norm() == doctest::Approx(1.0).epsilon(1e-12));
  for (double tau : {1.0, 100.0, 300.0}) {
    const auto ref = survival_amplitude(narrow, 0.0, tau).value;
    CHECK(std::abs(survival_oracle(fine, tau) - ref) <= 1e-6);
    CHECK(std::abs(survival_oracle(flat, tau) - ref) > 1e-6);
  }
  CHECK_THROWS_AS(
      from_spectral(SpectralDensity::tabulated({1.0, 2.0}, {1.0, 1.0}), 0.0, 5,
                    MassGrid::peak_refined),
      DomainError);
}

TEST_CASE("component decomposition") {
  DiscreteState st = two_level(1.0, 0.5);
  const auto d = component_decomposition(Eigen::Vector2d(1.0, -1.0), st);
  CHECK(std::abs(d.mean) <= 1e-16);
  CHECK(d.spread == doctest::Approx(1.0).epsilon(1e-15));
  REQUIRE(d.orthogonal);
  CHECK(std::abs(d.orthogonal->c(0) - 1 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(d.orthogonal->c(1) + 1 / std::sqrt(2.0)) <= 1e-15);

  st.c = Eigen::Vector2cd(0.0, 1.0);
  const auto eig = component_decomposition(Eigen::Vector2d(3.0, 7.0), st);
  CHECK(eig.mean == 7.0);
  CHECK(eig.spread == 0.0);
  CHECK_FALSE(eig.orthogonal.has_value());

  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto psi = random_state(rng, 64);
    Eigen::VectorXd a(64);
    for (auto& x : a) x = g(rng);
    const auto r = component_decomposition(a, psi);
    REQUIRE(r.orthogonal);
    const Eigen::VectorXcd lhs = a.cast<std::complex<double>>().cwiseProduct(psi.c);
    const Eigen::VectorXcd rhs = psi.c * r.mean + r.orthogonal->c * r.spread;
    CHECK((lhs - rhs).norm() <= 1e-12);
    CHECK(std::abs(psi.c.dot(r.orthogonal->c)) <= 1e-12);
    CHECK(r.orthogonal->c.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Complex diagonal operators keep a complex mean.
  const auto psi = random_state(rng, 8);
  const Eigen::VectorXcd ac = Eigen::VectorXcd::Constant(8, {0.0, 2.0});
  const auto rc = component_decomposition(ac, psi);
  CHECK(std::abs(rc.mean - std::complex<double>(0.0, 2.0)) <= 1e-14);
  CHECK_FALSE(rc.orthogonal.has_value());
}

TEST_CASE("mass-squared decomposition") {
  DiscreteState single;
  single.mu = Eigen::VectorXd::Constant(1, 3.0);
  single.c = Eigen::VectorXcd::Constant(1, 1.0);
  const auto d1 = mass_squared_decomposition(single);
  CHECK(d1.mean == 9.0);
  CHECK_FALSE(d1.orthogonal.has_value());

  const auto tr = SpectralDensity::breit_wigner_truncated(100.0, 1.0);
  const auto st = from_spectral(tr, 0.0, 20001);
  const auto d = mass_squared_decomposition(st);
  const double m2 = moment(tr, 2.0), m4 = moment(tr, 4.0);
  CHECK(d.mean == doctest::Approx(m2).epsilon(1e-4));
  CHECK(d.spread * d.spread == doctest::Approx(m4 - m2 * m2).epsilon(1e-3));
}

TEST_CASE("decay decomposition") {
  const auto tr = SpectralDensity::breit_wigner_truncated(100.0, 1.0);
  const auto st = from_spectral(tr, 100.0, 2001);
  const auto d0 = decay_decomposition(st, 0.0);
  CHECK(std::abs(d0.survival - 1.0) <= 1e-14);
  CHECK_FALSE(d0.orthogonal.has_value());
  CHECK(d0.weight <= 1e-7);  // sqrt of a rounding-level 1 - |I|^2
  for (double tau : {0.5, 2.0}) {
    const auto d = decay_decomposition(st, tau);
    REQUIRE(d.orthogonal);
    CHECK(std::norm(d.survival) + d.weight * d.weight == doctest::Approx(1.0).epsilon(1e-12));
    const Eigen::VectorXcd rebuilt = st.c * d.survival + d.orthogonal->c * d.weight;
    CHECK((rebuilt - evolve(st, tau).c).norm() <= 1e-12);
    CHECK(std::abs(st.c.dot(d.orthogonal->c)) <= 1e-12);
  }
  const auto beat = decay_decomposition(two_level(2.0, 0.5), std::numbers::pi);
  CHECK(std::abs(beat.survival) <= 1e-15);
  CHECK(beat.weight == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("convergence of the discrete oracle") {
  const auto tr = SpectralDensity::breit_wigner_truncated(100.0, 1.0);
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  double prev = 0.0;
  for (std::size_t n : {2501, 5001, 10001}) {
    const auto st = from_spectral(tr, 0.0, n);
    double worst = 0.0;
    for (double tau = 0.0; tau <= 10.0; tau += 1.0) {
      worst = std::max(worst, std::abs(survival_oracle(st, tau) -
                                       survival_amplitude(tr, 0.0, tau, cfg).value));
    }
    if (prev > 0.0) CHECK(std::log2(prev / worst) >= 1.9);
    prev = worst;
  }
}
