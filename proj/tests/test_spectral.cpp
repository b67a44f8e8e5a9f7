#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "hyperdecay/errors.hpp"
#include "hyperdecay/spectral.hpp"
#include "oracles.hpp"

using namespace hyperdecay;

TEST_CASE("Breit-Wigner density values") {
  const auto bw = SpectralDensity::breit_wigner(100.0, 2.0);
  CHECK(density(bw, 100.0) == doctest::Approx(2.0 / (std::numbers::pi * 2.0)));
  for (double x : {0.1, 1.0, 7.5, 120.0}) {
    CHECK(bw(100.0 + x) == doctest::Approx(bw(100.0 - x)).epsilon(1e-14));
  }
  CHECK(bw(-30.0) > 0.0);  // full line
  CHECK(bw.support().lo == -std::numeric_limits<double>::infinity());
}

TEST_CASE("normalize") {
  const auto bw = SpectralDensity::breit_wigner(100.0, 1.0);
  CHECK(normalize(bw)(100.3) == bw(100.3));

  // Default window [50, 150]: the kept mass follows from the arctangent.
  const auto tr = SpectralDensity::breit_wigner_truncated(100.0, 1.0);
  const double kept = oracle::lorentzian_mass(50.0, 150.0, 100.0, 1.0);
  CHECK(tr(100.0) == doctest::Approx(bw(100.0) / kept).epsilon(1e-14));
  CHECK(tr(49.9) == 0.0);
  CHECK(tr(150.1) == 0.0);
  CHECK(moment(tr, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kept > 0.993);

  // Window clipped at zero.
  const auto wide = SpectralDensity::breit_wigner_truncated(10.0, 1.0);
  CHECK(wide.support().lo == 0.0);
  CHECK(wide.support().hi == 60.0);

  const auto flat = normalize(SpectralDensity::tabulated({1.0, 1.5, 2.0}, {3.0, 3.0, 3.0}));
  for (double mu : {1.0, 1.2, 1.5, 1.99, 2.0}) {
    CHECK(flat(mu) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(flat(0.99) == 0.0);
  CHECK(flat(2.01) == 0.0);

  CHECK_THROWS_AS(normalize(SpectralDensity::tabulated({1.0, 2.0}, {0.0, 0.0})),
                  DomainError);
}

TEST_CASE("tabulated interpolation stays non-negative") {
  // A sharp peak that would make an unconstrained cubic spline undershoot.
  std::vector<double> mu, w;
  for (int i = 0; i <= 20; ++i) {
    mu.push_back(i * 0.1);
    w.push_back(i == 10 ? 5.0 : (i == 9 || i == 11 ? 0.2 : 0.0));
  }
  const auto t = normalize(SpectralDensity::tabulated(mu, w));
  for (int i = 0; i <= 2000; ++i) CHECK(t(i * 0.001) >= 0.0);
  CHECK(moment(t, 0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tabulated rejects malformed samples") {
  CHECK_THROWS_AS(SpectralDensity::tabulated({1.0, 1.0}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(SpectralDensity::tabulated({1.0, 2.0}, {1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(SpectralDensity::tabulated({-1.0, 2.0}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(SpectralDensity::tabulated({1.0}, {1.0}), DomainError);
}

TEST_CASE("load_tabulated reads two columns and skips comments") {
  const auto path = std::filesystem::temp_directory_path() / "hyperdecay_sigma.txt";
  {
    std::ofstream f(path);
    f << "# mass weight\n1.0 2.0\n\n  # indented comment\n1.5 2.0\n2.0 2.0\n";
  }
  const auto t = SpectralDensity::load_tabulated(path.string());
  CHECK(t(1.25) == doctest::Approx(1.0));
  {
    std::ofstream f(path);
    f << "1.0 2.0\n1.5\n";
  }
  CHECK_THROWS_AS(SpectralDensity::load_tabulated(path.string()), DomainError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(SpectralDensity::load_tabulated(path.string()), DomainError);
}

TEST_CASE("moments") {
  const auto pm = SpectralDensity::point_mass(3.0);
  for (int k : {-3, -1, 0, 1, 2, 4}) {
    CHECK(moment(pm, k) == doctest::Approx(std::pow(3.0, k)));
  }
  CHECK(moment(SpectralDensity::breit_wigner(100.0, 1.0), 0) == 1.0);
  CHECK_THROWS_AS(moment(SpectralDensity::breit_wigner(100.0, 1.0), 2), DomainError);
  CHECK_THROWS_AS(moment(SpectralDensity::breit_wigner(100.0, 1.0), -3), DomainError);
  CHECK_THROWS_AS(moment(SpectralDensity::breit_wigner_truncated(1.0, 1.0), -3),
                  DomainError);

  // Inverse cube of the default-window BW(100, 1) against Simpson.
  const auto tr = SpectralDensity::breit_wigner_truncated(100.0, 1.0);
  const oracle::TruncatedBW ref{100.0, 1.0, 50.0, 150.0};
  const double m3 = moment(tr, -3);
  const double o3 = oracle::simpson<double>(
      [&](double mu) { return ref(mu) / (mu * mu * mu); }, 50.0, 150.0, 200000);
  CHECK(m3 == doctest::Approx(o3).epsilon(1e-9));
  // The +-50 Gamma tails give <(mu - mu0)^2> ~ 50 Gamma^2 / pi, so the shift
  // is (Gamma/mu0)^2 times a window-dependent factor of order 10^2.
  const double rel = m3 * 1e6 - 1.0;
  CHECK(rel > 1e-4);
  CHECK(rel < 200e-4);

  const double m2 = moment(tr, 2);
  const double o2 = oracle::simpson<double>(
      [&](double mu) { return ref(mu) * mu * mu; }, 50.0, 150.0, 200000);
  CHECK(m2 == doctest::Approx(o2).epsilon(1e-10));
}

TEST_CASE("moment bounds on a compact support") {
  const auto tr = SpectralDensity::breit_wigner_truncated(5.0, 1.0, 2.0, 9.0);
  for (int k : {0, 1, 2, 3}) {
    const double m = moment(tr, k);
    CHECK(m >= std::pow(2.0, k) * (1 - 1e-12));
    CHECK(m <= std::pow(9.0, k) * (1 + 1e-12));
  }
  for (int k : {-1, -3}) {
    const double m = moment(tr, k);
    CHECK(m <= std::pow(2.0, k));
    CHECK(m >= std::pow(9.0, k));
  }
}

TEST_CASE("integral of sigma squared") {
  const double a = integral_of_square(SpectralDensity::breit_wigner(100.0, 1.0));
  const double b = integral_of_square(SpectralDensity::breit_wigner(100.0, 0.5));
  CHECK(a == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(b / a == doctest::Approx(2.0).epsilon(1e-9));

  const auto tr = SpectralDensity::breit_wigner_truncated(100.0, 1.0);
  const oracle::TruncatedBW ref{100.0, 1.0, 50.0, 150.0};
  const double o = oracle::simpson<double>(
      [&](double mu) { return ref(mu) * ref(mu); }, 50.0, 150.0, 200000);
  CHECK(integral_of_square(tr) == doctest::Approx(o).epsilon(1e-10));
  CHECK_THROWS_AS(integral_of_square(SpectralDensity::point_mass(1.0)), DomainError);
}

TEST_CASE("r_weight") {
  const auto tr = SpectralDensity::breit_wigner_truncated(100.0, 1.0);
  CHECK(r_weight(tr, 10.0) == 0.0);
  for (double mu : {60.0, 99.5, 100.0, 101.0, 140.0}) {
    const double r = r_weight(tr, mu);
    CHECK(2.0 * mu * r * r == doctest::Approx(tr(mu)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(r_weight(SpectralDensity::point_mass(1.0), 1.0), DomainError);
  CHECK_THROWS_AS(r_weight(tr, 0.0), DomainError);
  CHECK_THROWS_AS(r_weight(tr, -1.0), DomainError);
}

TEST_CASE("spectral_moments") {
  const auto pm = spectral_moments(SpectralDensity::point_mass(2.0));
  CHECK(pm.mean_square == 4.0);
  CHECK(pm.spread == 0.0);
  REQUIRE(pm.inverse_cube);
  CHECK(*pm.inverse_cube == doctest::Approx(0.125));

  const auto tr = SpectralDensity::breit_wigner_truncated(100.0, 1.0);
  const auto m = spectral_moments(tr);
  CHECK(m.spread > 0.0);
  CHECK(m.spread * m.spread ==
        doctest::Approx(moment(tr, 4) - moment(tr, 2) * moment(tr, 2)).epsilon(1e-6));
  CHECK(!spectral_moments(SpectralDensity::breit_wigner_truncated(1.0, 1.0))
             .inverse_cube);
}

TEST_CASE("invalid Breit-Wigner parameters") {
  CHECK_THROWS_AS(SpectralDensity::breit_wigner(100.0, 0.0), DomainError);
  CHECK_THROWS_AS(SpectralDensity::breit_wigner(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(SpectralDensity::breit_wigner_truncated(1.0, 1.0, 3.0, 2.0),
                  DomainError);
  CHECK_THROWS_AS(SpectralDensity::point_mass(1.0)(1.0), DomainError);
}
