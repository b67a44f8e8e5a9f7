#include "hyperdecay/lifetime.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hyperdecay/errors.hpp"
#include "hyperdecay/survival.hpp"

namespace hyperdecay {

std::string to_string(LifetimeMethod m) {
  switch (m) {
    case LifetimeMethod::closed_form: return "closed-form";
    case LifetimeMethod::direct: return "direct";
    case LifetimeMethod::bw_approx: return "bw-approx";
  }
  return "unknown";
}

std::string to_string(TaylorVariant v) {
  return v == TaylorVariant::derived ? "derived" : "literal";
}

double dilation_factor(double mu0, double s) {
  return std::sqrt(mu0 * mu0 + s) / mu0;
}

namespace {

constexpr double kClosedFormTol = 1e-13;

void check_s(double s, const char* who) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw DomainError(std::string(who) + ": s must be finite and >= 0");
  }
}

// pi * PV integral over the real line, folded onto [0, inf). The odd part of
// sigma^2 is formed without cancellation:
//   sigma(mu) - sigma(-mu) = (Gamma / 2 pi) 4 mu mu0 / (D(mu) D(-mu)).
QuadResult<double> full_line_closed_form(const BreitWignerFullLine& bw,
                                         double s) {
  const double g2 = 0.25 * bw.gamma * bw.gamma;
  const double amp = bw.gamma / (2.0 * std::numbers::pi);
  auto folded = [&](double mu) {
    const double dm = (mu - bw.mu0) * (mu - bw.mu0) + g2;
    const double dp = (mu + bw.mu0) * (mu + bw.mu0) + g2;
    const double sum = amp / dm + amp / dp;
    return std::sqrt(mu * mu + s) * amp * 4.0 * bw.mu0 / (dm * dp) * sum;
  };

  const double cut = bw.mu0 + 50.0 * bw.gamma;
  std::vector<double> pts{0.0, cut};
  for (double k : {-50.0, -20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0}) {
    pts.push_back(bw.mu0 + k * bw.gamma);
  }
  const auto breaks = merge_breaks(std::move(pts), 0.0, cut);
  AdaptiveOptions opt;
  opt.rel_tol = kClosedFormTol;
  auto body = integrate_adaptive<double>(folded, breaks, opt);

  // mu = cut + t / (1 - t) maps [0, 1) onto the tail.
  const std::vector<double> unit{0.0, 0.5, 0.9, 0.99, 1.0};
  auto tail = integrate_adaptive<double>(
      [&](double t) {
        if (t >= 1.0) return 0.0;
        const double u = 1.0 - t;
        return folded(cut + t / u) / (u * u);
      },
      unit, opt);
  body.value += tail.value;
  body.error += tail.error;
  body.l1 += tail.l1;
  return body;
}

QuadResult<double> supported_closed_form(const SpectralDensity& sigma,
                                         double s) {
  const Support sup = sigma.support();
  if (s > 0.0 && sup.lo <= 0.0 && sigma(0.0) > 0.0) {
    throw DomainError(
        "lifetime_closed_form: integrand not integrable at mu = 0");
  }
  AdaptiveOptions opt;
  opt.rel_tol = kClosedFormTol;
  const auto breaks = sigma.breakpoints();
  return integrate_adaptive<double>(
      [&](double mu) {
        const double v = sigma(mu);
        if (v == 0.0) return 0.0;
        return v * v * std::sqrt(mu * mu + s) / mu;
      },
      breaks, opt);
}

}  // namespace

LifetimeResult lifetime_closed_form(const SpectralDensity& sigma, double s) {
  check_s(s, "lifetime_closed_form");
  if (sigma.is_point_mass()) {
    throw DomainError("lifetime_closed_form: stable: infinite lifetime");
  }
  const auto r =
      sigma.is_full_line()
          ? full_line_closed_form(std::get<BreitWignerFullLine>(sigma.model()), s)
          : supported_closed_form(sigma, s);
  const double value = std::numbers::pi * r.value;
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("lifetime_closed_form: non-positive or divergent value");
  }
  return {value, LifetimeMethod::closed_form, std::numbers::pi * r.error};
}

LifetimeResult lifetime_direct(const SpectralDensity& sigma, double s,
                               const QuadratureConfig& cfg,
                               const DirectOptions& opt) {
  check_s(s, "lifetime_direct");
  cfg.validate();
  if (!(opt.rel_tol > 0.0) || !(opt.cutoff_factor > 1.0)) {
    throw DomainError("lifetime_direct: invalid options");
  }
  if (sigma.is_point_mass()) {
    throw DomainError("lifetime_direct: stable: infinite lifetime");
  }
  const double estimate = lifetime_closed_form(sigma, s).value;
  const double tau_max = opt.cutoff_factor * estimate;
  auto prob = [&](double tau) { return survival_probability(sigma, s, tau, cfg); };

  AdaptiveOptions outer;
  outer.rel_tol = 0.1 * opt.rel_tol;
  outer.max_panels = cfg.max_panels;
  const auto breaks = uniform_breaks(0.0, tau_max, estimate);
  const auto body = integrate_adaptive<double>(prob, breaks, outer);

  // Tail: exponential fitted over the last tenth of the range, or the 1/tau^2
  // law P(tau_max) tau_max, whichever is larger.
  const double p_end = prob(tau_max);
  const double p_before = prob(0.9 * tau_max);
  double tail = p_end * tau_max;
  if (p_end > 0.0 && p_before > p_end) {
    const double rate = std::log(p_before / p_end) / (0.1 * tau_max);
    tail = std::max(tail, p_end / rate);
  }
  if (tail > 0.5 * opt.rel_tol * body.value) {
    throw ConvergenceError("lifetime_direct: tail bound exceeds budget",
                           tail / std::max(body.value, 1e-300));
  }
  return {body.value, LifetimeMethod::direct, body.error + tail};
}

TaylorCoefficients taylor_coefficients(double mu0, double s,
                                       TaylorVariant variant) {
  if (!(mu0 > 0.0)) throw DomainError("taylor_coefficients: mu0 must be > 0");
  const double e0 = std::sqrt(mu0 * mu0 + s);
  const double mu0_3 = mu0 * mu0 * mu0;
  TaylorCoefficients c{e0 / mu0, -s / (mu0 * mu0 * e0), 0.0};
  const double quad = variant == TaylorVariant::derived ? s : 2.0 * s;
  c.c2 = s * (1.5 * mu0 * mu0 + quad) / (mu0_3 * e0 * e0 * e0);
  return c;
}

double dilation_factor_taylor(double mu0, double s, double mu,
                              TaylorVariant variant) {
  const auto c = taylor_coefficients(mu0, s, variant);
  const double x = mu - mu0;
  return c.gamma0 + c.c1 * x + c.c2 * x * x;
}

LifetimeResult lifetime_bw_approx(double mu0, double gamma, double s,
                                  TaylorVariant variant) {
  check_s(s, "lifetime_bw_approx");
  if (!(mu0 > 0.0) || !(gamma > 0.0)) {
    throw DomainError("lifetime_bw_approx: mu0 and Gamma must be > 0");
  }
  const double ratio = gamma / mu0;
  if (!(ratio < 0.2)) {
    throw DomainError("lifetime_bw_approx: requires Gamma/mu0 < 0.2");
  }
  const auto c = taylor_coefficients(mu0, s, variant);
  const double t0 = 1.0 / gamma;
  // Order-of-magnitude estimate of the neglected terms.
  const double err = s > 0.0 ? t0 * c.gamma0 * ratio * ratio * ratio : 0.0;
  return {t0 * (c.gamma0 + 0.25 * c.c2 * gamma * gamma),
          LifetimeMethod::bw_approx, err};
}

std::vector<DeviationRow> deviation_report(const SpectralDensity& sigma,
                                           std::span<const double> s_grid) {
  const auto rest = lifetime_closed_form(sigma, 0.0);
  const double mu_ref = sigma.reference_mass();
  std::vector<DeviationRow> rows;
  rows.reserve(s_grid.size());
  for (double s : s_grid) {
    const auto t = s == 0.0 ? rest : lifetime_closed_form(sigma, s);
    const double einstein = dilation_factor(mu_ref, s) * rest.value;
    const double dev = s == 0.0 ? 0.0 : t.value / einstein - 1.0;
    rows.push_back({s, t.value, einstein, dev,
                    t.error / t.value + rest.error / rest.value});
  }
  return rows;
}

}  // namespace hyperdecay
