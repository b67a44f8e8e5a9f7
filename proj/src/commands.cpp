#include "hyperdecay/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <thread>

#include <json.hpp>

#include "hyperdecay/errors.hpp"
#include "hyperdecay/lifetime.hpp"
#include "hyperdecay/overlap.hpp"
#include "hyperdecay/survival.hpp"
#include "hyperdecay/twopoint.hpp"
#include "hyperdecay/velocity.hpp"

namespace hyperdecay {

std::string to_string(Units u) {
  return u == Units::natural ? "natural" : "physical";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Keys read by the front end rather than by a command.
const std::vector<std::string> kFrontEndKeys{"command", "units", "output.format",
                                             "output.path", "threads"};

// Runs row(i) for i in [0, n) on up to `threads` workers; the exception of
// the lowest failing index is rethrown.
template <typename F>
std::vector<std::vector<double>> parallel_rows(std::size_t n, unsigned threads,
                                               F&& row) {
  std::vector<std::vector<double>> rows(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        rows[i] = row(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

struct TimeScale {
  double to_natural;  ///< multiply a user time by this
  double to_user;     ///< multiply a natural time by this
};

TimeScale time_scale(Units u) {
  if (u == Units::physical) return {1.0 / kHbarMeVSeconds, kHbarMeVSeconds};
  return {1.0, 1.0};
}

void reject_unused(const Scenario& sc) {
  for (const auto& key : sc.unused_keys()) {
    if (std::find(kFrontEndKeys.begin(), kFrontEndKeys.end(), key) ==
        kFrontEndKeys.end()) {
      throw ScenarioError(key, "unknown field");
    }
  }
}

std::vector<double> nonnegative_list(const Scenario& sc, const std::string& key,
                                     std::vector<double> fallback) {
  auto v = sc.list(key, std::move(fallback));
  for (double x : v) {
    if (!(x >= 0.0)) throw ScenarioError(key, "values must be >= 0");
  }
  return v;
}

ThreeVectord direction(const Scenario& sc, const std::string& key) {
  const auto d = sc.list(key, {1.0, 0.0, 0.0});
  if (d.size() != 3) throw ScenarioError(key, "expected three components");
  ThreeVectord v(d[0], d[1], d[2]);
  if (!(v.norm() > 0.0)) throw ScenarioError(key, "must be non-zero");
  return v.normalized();
}

Hyperplaned plane(const Scenario& sc, const std::string& normal_key,
                  double offset) {
  try {
    return Hyperplaned(sc.four_vector(normal_key), offset);
  } catch (const DomainError& e) {
    throw ScenarioError(normal_key, e.what());
  }
}

Table cmd_survival(const Scenario& sc, const RunOptions& opt) {
  const auto sigma = spectral_from_scenario(sc);
  const auto cfg = quadrature_from_scenario(sc);
  const auto ts = time_scale(opt.units);
  double s = 0.0;
  if (sc.has("survival.p")) {
    const auto p = sc.four_vector("survival.p");
    const auto h = plane(sc, "survival.eta", 0.0);
    try {
      s = SPMomentum(p, h).s();
    } catch (const DomainError& e) {
      throw ScenarioError("survival.p", e.what());
    }
  } else {
    s = sc.number("survival.s", 0.0);
    if (!(s >= 0.0)) throw ScenarioError("survival.s", "must be >= 0");
  }
  const auto tau = sc.list("survival.tau");
  reject_unused(sc);

  Table t{"survival",
          {"tau", "re_I", "im_I", "abs_I_sq", "quad_error", "truncation_error"},
          {}};
  t.rows = parallel_rows(tau.size(), opt.threads, [&](std::size_t i) {
    const auto r = survival_amplitude(sigma, s, tau[i] * ts.to_natural, cfg);
    return std::vector<double>{tau[i], r.value.real(), r.value.imag(),
                               std::norm(r.value), r.error, r.truncation_error};
  });
  return t;
}

Table cmd_lifetime(const Scenario& sc, const RunOptions& opt) {
  const auto sigma = spectral_from_scenario(sc);
  const auto cfg = quadrature_from_scenario(sc);
  const auto ts = time_scale(opt.units);
  if (sigma.is_point_mass()) {
    throw ScenarioError("spectral.model",
                        "stable: a point mass has an infinite lifetime");
  }
  const auto s_grid = nonnegative_list(sc, "lifetime.s", {0.0});
  const bool direct = sc.flag("lifetime.direct", true);
  DirectOptions dopt;
  dopt.rel_tol = sc.number("lifetime.direct_rel_tol", dopt.rel_tol);
  reject_unused(sc);

  std::optional<std::pair<double, double>> bw;
  if (const auto g = sigma.width();
      g && *g / sigma.reference_mass() < 0.2) {
    bw = std::make_pair(sigma.reference_mass(), *g);
  }
  const auto rest = lifetime_closed_form(sigma, 0.0).value;

  Table t{"lifetime",
          {"s", "closed_form", "closed_form_error", "direct", "direct_error",
           "bw_derived", "bw_literal", "einstein", "deviation"},
          {}};
  t.rows = parallel_rows(s_grid.size(), opt.threads, [&](std::size_t i) {
    const double s = s_grid[i];
    const auto cf = lifetime_closed_form(sigma, s);
    double dv = kNaN, de = kNaN;
    if (direct) {
      const auto d = lifetime_direct(sigma, s, cfg, dopt);
      dv = d.value * ts.to_user;
      de = d.error * ts.to_user;
    }
    double bd = kNaN, bp = kNaN;
    if (bw) {
      bd = lifetime_bw_approx(bw->first, bw->second, s, TaylorVariant::derived)
               .value * ts.to_user;
      bp = lifetime_bw_approx(bw->first, bw->second, s,
                              TaylorVariant::literal)
               .value * ts.to_user;
    }
    const double einstein = dilation_factor(sigma.reference_mass(), s) * rest;
    const double dev = s == 0.0 ? 0.0 : cf.value / einstein - 1.0;
    return std::vector<double>{s,  cf.value * ts.to_user, cf.error * ts.to_user,
                               dv, de, bd, bp, einstein * ts.to_user, dev};
  });
  return t;
}

Table cmd_velocity(const Scenario& sc, const RunOptions& opt) {
  const auto sigma = spectral_from_scenario(sc);
  const auto cfg = quadrature_from_scenario(sc);
  const auto ts = time_scale(opt.units);
  const auto speeds = nonnegative_list(sc, "velocity.u", {0.0});
  for (double u : speeds) {
    if (!(u < 1.0)) throw ScenarioError("velocity.u", "speeds must be < 1");
  }
  const ThreeVectord dir = direction(sc, "velocity.direction");
  const auto times = sc.list("velocity.t", {0.0});
  reject_unused(sc);

  const double t0 =
      sigma.is_point_mass() ? kNaN : lifetime_closed_form(sigma, 0.0).value;
  Table t{"velocity",
          {"u", "t", "re_I", "im_I", "abs_I_sq", "lifetime", "interval_between",
           "interval_along"},
          {}};
  const std::size_t nt = times.size();
  t.rows = parallel_rows(speeds.size() * nt, opt.threads, [&](std::size_t k) {
    const ThreeVectord u = speeds[k / nt] * dir;
    const double time = times[k % nt];
    const auto amp = contracted_survival(sigma, u, time * ts.to_natural, cfg);
    double life = kNaN, between = kNaN, along = kNaN;
    if (!sigma.is_point_mass()) {
      life = contracted_lifetime(sigma, u).value * ts.to_user;
      const auto f = fig2_intervals(t0 * ts.to_user, u);
      between = f.between_planes;
      along = f.along_normal;
    }
    return std::vector<double>{speeds[k / nt], time,  amp.real(), amp.imag(),
                               std::norm(amp), life,  between,    along};
  });
  return t;
}

Table cmd_overlap(const Scenario& sc, const RunOptions& opt) {
  const auto sigma = spectral_from_scenario(sc);
  const auto ts = time_scale(opt.units);
  const auto tau = sc.list("overlap.tau", {0.0});
  auto tau2 = sc.list("overlap.tau2", {0.0});
  if (tau2.size() == 1) tau2.assign(tau.size(), tau2.front());
  if (tau2.size() != tau.size()) {
    throw ScenarioError("overlap.tau2", "length must match overlap.tau or be 1");
  }
  OverlapConfig base{plane(sc, "overlap.eta", 0.0), plane(sc, "overlap.eta2", 0.0),
                     sc.four_vector("overlap.p"), sc.four_vector("overlap.p2")};
  try {
    base.validate();
  } catch (const DomainError& e) {
    throw ScenarioError("overlap", e.what());
  }
  if (sigma.is_point_mass()) {
    throw ScenarioError("spectral.model", "overlap needs a density");
  }
  reject_unused(sc);

  Table t{"overlap",
          {"tau", "tau2", "q0", "q1", "q2", "q3", "q_sq", "accessible",
           "transverse_match", "modulus", "phase", "form_spread"},
          {}};
  t.rows = parallel_rows(tau.size(), opt.threads, [&](std::size_t i) {
    OverlapConfig c = base;
    c.h = Hyperplaned(base.h.normal(), tau[i] * ts.to_natural);
    c.h2 = Hyperplaned(base.h2.normal(), tau2[i] * ts.to_natural);
    const auto r = evaluate_overlap(c, sigma);
    const FourVectord& q = r.shared.q;
    return std::vector<double>{tau[i],
                               tau2[i],
                               q(0),
                               q(1),
                               q(2),
                               q(3),
                               msquare(q),
                               r.accessible ? 1.0 : 0.0,
                               r.transverse_match ? 1.0 : 0.0,
                               std::abs(r.amplitude),
                               std::arg(r.amplitude),
                               r.shared.spread()};
  });
  return t;
}

Table cmd_twopoint(const Scenario& sc, const RunOptions& opt) {
  const auto sigma = spectral_from_scenario(sc);
  const auto cfg = quadrature_from_scenario(sc);
  const auto ts = time_scale(opt.units);
  const auto s_grid = nonnegative_list(sc, "twopoint.s", {0.0});
  const auto dtau = sc.list("twopoint.dtau");
  const std::string coupling = sc.text("twopoint.coupling", "matched");
  reject_unused(sc);

  if (sigma.is_point_mass() || sigma.is_full_line()) {
    throw ScenarioError("spectral.model",
                        "twopoint needs a density supported in [0, inf)");
  }
  FieldCoupling f = FieldCoupling::zero();
  if (coupling == "matched") {
    f = coupling_matched(sigma);
  } else if (coupling != "zero") {
    throw ScenarioError("twopoint.coupling", "expected matched or zero");
  }

  Table t{"twopoint",
          {"s", "dtau", "re_pair", "im_pair", "re_projected", "im_projected",
           "re_residual", "im_residual", "abs_residual"},
          {}};
  const std::size_t nd = dtau.size();
  t.rows = parallel_rows(s_grid.size() * nd, opt.threads, [&](std::size_t k) {
    const double s = s_grid[k / nd];
    const double d = dtau[k % nd] * ts.to_natural;
    const auto a = pair_contribution(f, sigma, s, d, cfg);
    const auto b = projected_contribution(f, sigma, s, d, cfg);
    const auto r = a - b;
    return std::vector<double>{s,        dtau[k % nd], a.real(), a.imag(),
                               b.real(), b.imag(),     r.real(), r.imag(),
                               std::abs(r)};
  });
  return t;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hash_text(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
  return buf;
}

}  // namespace

Table run_command(const std::string& command, const Scenario& sc,
                  const RunOptions& opt) {
  if (sc.has("command") && sc.text("command") != command) {
    throw ScenarioError("command", "scenario is for '" + sc.text("command") +
                                       "', not '" + command + "'");
  }
  if (command == "survival") return cmd_survival(sc, opt);
  if (command == "lifetime") return cmd_lifetime(sc, opt);
  if (command == "velocity") return cmd_velocity(sc, opt);
  if (command == "overlap") return cmd_overlap(sc, opt);
  if (command == "twopoint") return cmd_twopoint(sc, opt);
  throw ScenarioError("command", "unknown command '" + command + "'");
}

void write_csv(std::ostream& out, const Table& t, const OutputMeta& meta) {
  out << "# hyperdecay " << HYPERDECAY_VERSION << '\n'
      << "# command: " << t.command << '\n'
      << "# scenario: " << hash_text(meta.scenario_hash) << '\n'
      << "# units: " << to_string(meta.units) << '\n';
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    out << (j ? "," : "") << t.columns[j];
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? "," : "") << format_number(row[j]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& t, const OutputMeta& meta) {
  nlohmann::ordered_json doc;
  doc["generator"] = std::string("hyperdecay ") + HYPERDECAY_VERSION;
  doc["command"] = t.command;
  doc["scenario"] = hash_text(meta.scenario_hash);
  doc["units"] = to_string(meta.units);
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (std::isfinite(row[j])) {
        rec[t.columns[j]] = row[j];
      } else {
        rec[t.columns[j]] = nullptr;
      }
    }
    rows.push_back(std::move(rec));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

}  // namespace hyperdecay
