#include "hyperdecay/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "hyperdecay/errors.hpp"
#include "hyperdecay/quadrature.hpp"

namespace hyperdecay {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lorentzian(double mu, double mu0, double gamma) {
  const double x = mu - mu0;
  const double g = 0.5 * gamma;
  return (gamma / (2.0 * std::numbers::pi)) / (x * x + g * g);
}

// Probability mass of the unit Lorentzian on [a, b].
double lorentzian_mass(double a, double b, double mu0, double gamma) {
  return (std::atan(2.0 * (b - mu0) / gamma) -
          std::atan(2.0 * (a - mu0) / gamma)) /
         std::numbers::pi;
}

void check_bw(double mu0, double gamma) {
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) {
    throw DomainError("Breit-Wigner: mu0 must be finite and > 0");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("Breit-Wigner: Gamma must be finite and > 0");
  }
}

// Fritsch-Carlson slopes (weighted harmonic mean, shape-preserving ends).
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) {
      d[k] = 0.0;
    } else {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (std::signbit(s) != std::signbit(d0) || d0 == 0.0) {
      s = 0.0;
    } else if (std::signbit(d0) != std::signbit(d1) &&
               std::abs(s) > 3.0 * std::abs(d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

double pchip_eval(const TabulatedDensity& t, double mu) {
  const auto& x = t.mu;
  if (!(mu >= x.front() && mu <= x.back())) return 0.0;
  auto it = std::upper_bound(x.begin(), x.end(), mu);
  std::size_t k = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  if (k >= x.size() - 1) k = x.size() - 2;
  const double h = x[k + 1] - x[k];
  const double s = (mu - x[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  const double v = h00 * t.values[k] + h10 * h * t.slopes[k] +
                   h01 * t.values[k + 1] + h11 * h * t.slopes[k + 1];
  return std::max(0.0, v) * t.scale;
}

// Exact integral of the Hermite interpolant (before scaling).
double pchip_integral(const TabulatedDensity& t) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < t.mu.size(); ++k) {
    const double h = t.mu[k + 1] - t.mu[k];
    total += h * 0.5 * (t.values[k] + t.values[k + 1]) +
             h * h * (t.slopes[k] - t.slopes[k + 1]) / 12.0;
  }
  return total;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

SpectralDensity SpectralDensity::breit_wigner(double mu0, double gamma) {
  check_bw(mu0, gamma);
  return SpectralDensity(BreitWignerFullLine{mu0, gamma});
}

SpectralDensity SpectralDensity::breit_wigner_truncated(double mu0, double gamma,
                                                        double window) {
  check_bw(mu0, gamma);
  if (!(window > 0.0)) throw DomainError("Breit-Wigner: window must be > 0");
  return breit_wigner_truncated(mu0, gamma, std::max(0.0, mu0 - window * gamma),
                                mu0 + window * gamma);
}

SpectralDensity SpectralDensity::breit_wigner_truncated(double mu0, double gamma,
                                                        double mu_min,
                                                        double mu_max) {
  check_bw(mu0, gamma);
  if (!(mu_min >= 0.0) || !(mu_max > mu_min) || !std::isfinite(mu_max)) {
    throw DomainError("Breit-Wigner: need 0 <= mu_min < mu_max < inf");
  }
  const double mass = lorentzian_mass(mu_min, mu_max, mu0, gamma);
  if (!(mass > 0.0)) throw DomainError("Breit-Wigner: window has no mass");
  return SpectralDensity(
      BreitWignerTruncated{mu0, gamma, mu_min, mu_max, 1.0 / mass});
}

SpectralDensity SpectralDensity::tabulated(std::vector<double> mu,
                                           std::vector<double> weights) {
  if (mu.size() != weights.size()) {
    throw DomainError("tabulated density: mu and weight sizes differ");
  }
  if (mu.size() < 2) throw DomainError("tabulated density: need >= 2 samples");
  if (!(mu.front() >= 0.0)) {
    throw DomainError("tabulated density: mu must be >= 0");
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!std::isfinite(mu[i]) || !std::isfinite(weights[i])) {
      throw DomainError("tabulated density: non-finite sample");
    }
    if (weights[i] < 0.0) {
      throw DomainError("tabulated density: negative weight");
    }
    if (i > 0 && !(mu[i] > mu[i - 1])) {
      throw DomainError("tabulated density: mu must be strictly increasing");
    }
  }
  TabulatedDensity t;
  t.slopes = pchip_slopes(mu, weights);
  t.mu = std::move(mu);
  t.values = std::move(weights);
  return SpectralDensity(std::move(t));
}

SpectralDensity SpectralDensity::point_mass(double mu0) {
  if (!(mu0 >= 0.0) || !std::isfinite(mu0)) {
    throw DomainError("point mass: mu0 must be finite and >= 0");
  }
  return SpectralDensity(PointMass{mu0});
}

SpectralDensity SpectralDensity::load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open spectral table '" + path + "'");
  std::vector<double> mu, w;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    double a = 0.0, b = 0.0;
    if (!(ss >> a >> b)) {
      throw DomainError("spectral table '" + path + "' line " +
                        std::to_string(lineno) + ": expected two numbers");
    }
    mu.push_back(a);
    w.push_back(b);
  }
  return normalize(tabulated(std::move(mu), std::move(w)));
}

double SpectralDensity::operator()(double mu) const {
  return std::visit(
      overloaded{
          [&](const BreitWignerFullLine& m) {
            return lorentzian(mu, m.mu0, m.gamma);
          },
          [&](const BreitWignerTruncated& m) {
            if (!(mu >= m.mu_min && mu <= m.mu_max)) return 0.0;
            return m.norm * lorentzian(mu, m.mu0, m.gamma);
          },
          [&](const TabulatedDensity& t) { return pchip_eval(t, mu); },
          [&](const PointMass&) -> double {
            throw DomainError("point mass has no density value");
          }},
      model_);
}

Support SpectralDensity::support() const {
  return std::visit(
      overloaded{
          [](const BreitWignerFullLine&) { return Support{-kInf, kInf}; },
          [](const BreitWignerTruncated& m) {
            return Support{m.mu_min, m.mu_max};
          },
          [](const TabulatedDensity& t) {
            return Support{t.mu.front(), t.mu.back()};
          },
          [](const PointMass& m) { return Support{m.mu0, m.mu0}; }},
      model_);
}

double SpectralDensity::reference_mass() const {
  return std::visit(
      overloaded{[](const BreitWignerFullLine& m) { return m.mu0; },
                 [](const BreitWignerTruncated& m) { return m.mu0; },
                 [](const TabulatedDensity& t) {
                   auto it = std::max_element(t.values.begin(), t.values.end());
                   return t.mu[static_cast<std::size_t>(it - t.values.begin())];
                 },
                 [](const PointMass& m) { return m.mu0; }},
      model_);
}

std::optional<double> SpectralDensity::width() const {
  if (auto* m = std::get_if<BreitWignerFullLine>(&model_)) return m->gamma;
  if (auto* m = std::get_if<BreitWignerTruncated>(&model_)) return m->gamma;
  return std::nullopt;
}

std::vector<double> SpectralDensity::breakpoints() const {
  const Support sup = support();
  std::vector<double> pts;
  auto bw_points = [&](double mu0, double gamma) {
    for (double k : {-50.0, -20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0, 50.0}) {
      pts.push_back(mu0 + k * gamma);
    }
  };
  std::visit(overloaded{[&](const BreitWignerFullLine& m) {
                          bw_points(m.mu0, m.gamma);
                        },
                        [&](const BreitWignerTruncated& m) {
                          bw_points(m.mu0, m.gamma);
                        },
                        [&](const TabulatedDensity& t) { pts = t.mu; },
                        [&](const PointMass& m) { pts.push_back(m.mu0); }},
             model_);
  if (std::isfinite(sup.lo) && std::isfinite(sup.hi)) {
    return merge_breaks(std::move(pts), sup.lo, sup.hi);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

double SpectralDensity::total_mass() const {
  return std::visit(
      overloaded{[](const BreitWignerFullLine&) { return 1.0; },
                 [](const BreitWignerTruncated& m) {
                   return m.norm *
                          lorentzian_mass(m.mu_min, m.mu_max, m.mu0, m.gamma);
                 },
                 [](const TabulatedDensity& t) {
                   return t.scale * pchip_integral(t);
                 },
                 [](const PointMass&) { return 1.0; }},
      model_);
}

double density(const SpectralDensity& sigma, double mu) { return sigma(mu); }

SpectralDensity normalize(const SpectralDensity& sigma) {
  return std::visit(
      overloaded{
          [&](const BreitWignerFullLine&) { return sigma; },
          [&](const PointMass&) { return sigma; },
          [&](const BreitWignerTruncated& m) {
            return SpectralDensity::breit_wigner_truncated(m.mu0, m.gamma,
                                                           m.mu_min, m.mu_max);
          },
          [&](const TabulatedDensity& t) {
            const double total = pchip_integral(t);
            if (!(total > 0.0) || !std::isfinite(total)) {
              throw DomainError("normalize: zero or non-finite total weight");
            }
            auto copy = SpectralDensity::tabulated(t.mu, t.values);
            std::get<TabulatedDensity>(copy.model_).scale = 1.0 / total;
            return copy;
          }},
      sigma.model());
}

namespace {

double integrate_weighted(const SpectralDensity& sigma, auto&& weight,
                          double rel_tol = 1e-13) {
  const auto breaks = sigma.breakpoints();
  AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  auto r = integrate_adaptive<double>(
      [&](double mu) { return sigma(mu) * weight(mu); }, breaks, opt);
  return r.value;
}

}  // namespace

double moment(const SpectralDensity& sigma, int k) {
  if (auto* pm = std::get_if<PointMass>(&sigma.model())) {
    if (k < 0 && pm->mu0 == 0.0) throw DomainError("moment: diverges at mu = 0");
    return std::pow(pm->mu0, k);
  }
  if (k == 0) return sigma.total_mass();
  if (sigma.is_full_line()) {
    throw DomainError(
        "moment: full-line Breit-Wigner has no finite moment of order != 0");
  }
  const Support sup = sigma.support();
  if (k < 0 && !(sup.lo > 0.0)) {
    throw DomainError("moment: negative order diverges when support reaches 0");
  }
  return integrate_weighted(sigma, [k](double mu) { return std::pow(mu, k); });
}

double integral_of_square(const SpectralDensity& sigma) {
  if (sigma.is_point_mass()) {
    throw DomainError("integral_of_square: point mass is not square integrable");
  }
  if (auto* m = std::get_if<BreitWignerFullLine>(&sigma.model())) {
    return 1.0 / (std::numbers::pi * m->gamma);
  }
  return integrate_weighted(sigma, [&](double mu) { return sigma(mu); });
}

double r_weight(const SpectralDensity& sigma, double mu) {
  if (sigma.is_point_mass()) {
    throw DomainError("r_weight: point mass has no density value");
  }
  if (!(mu > 0.0)) throw DomainError("r_weight: mu must be > 0");
  return std::sqrt(sigma(mu) / (2.0 * mu));
}

SpectralMoments spectral_moments(const SpectralDensity& sigma) {
  SpectralMoments m{};
  m.mean_square = moment(sigma, 2);
  const double m4 = moment(sigma, 4);
  m.spread = std::sqrt(std::max(0.0, m4 - m.mean_square * m.mean_square));
  if (sigma.is_point_mass()) m.spread = 0.0;
  try {
    m.inverse_cube = moment(sigma, -3);
  } catch (const DomainError&) {
    m.inverse_cube.reset();
  }
  return m;
}

}  // namespace hyperdecay
