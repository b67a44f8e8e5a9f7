#include "hyperdecay/scenario.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hyperdecay/errors.hpp"

namespace hyperdecay {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_number(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw ScenarioError(key, "expected a number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ScenarioError(key, "'" + s + "' is not a finite number");
  }
  return v;
}

}  // namespace

Scenario Scenario::parse(const std::string& text,
                         const std::filesystem::path& base_dir) {
  Scenario sc;
  sc.hash_ = fnv1a64(text);
  sc.base_dir_ = base_dir;
  std::istringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ScenarioError(where, "unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ScenarioError(where, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ScenarioError(where, "empty key");
    if (!section.empty()) key = section + "." + key;
    if (sc.values_.count(key)) throw ScenarioError(key, "duplicate key");
    sc.values_[key] = trim(line.substr(eq + 1));
  }
  return sc;
}

Scenario Scenario::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("scenario", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.parent_path());
}

bool Scenario::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string Scenario::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ScenarioError(key, "missing required field");
  used_.insert(key);
  return it->second;
}

std::string Scenario::text(const std::string& key,
                           const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

double Scenario::number(const std::string& key) const {
  return parse_number(key, text(key));
}

double Scenario::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::vector<double> Scenario::list(const std::string& key) const {
  const std::string raw = text(key);
  if (raw.rfind("linspace(", 0) == 0) {
    if (raw.back() != ')') throw ScenarioError(key, "unterminated linspace(");
    const auto args = split(raw.substr(9, raw.size() - 10), ',');
    if (args.size() != 3) throw ScenarioError(key, "linspace needs (a, b, n)");
    const double a = parse_number(key, args[0]);
    const double b = parse_number(key, args[1]);
    const double n = parse_number(key, args[2]);
    if (n < 1 || n != std::floor(n) || n > 1e7) {
      throw ScenarioError(key, "linspace count must be a positive integer");
    }
    const auto count = static_cast<std::size_t>(n);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = count == 1 ? a
                          : a + (b - a) * static_cast<double>(i) /
                                    static_cast<double>(count - 1);
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split(raw, ',')) out.push_back(parse_number(key, item));
  if (out.empty()) throw ScenarioError(key, "empty list");
  return out;
}

std::vector<double> Scenario::list(const std::string& key,
                                   std::vector<double> fallback) const {
  return has(key) ? list(key) : std::move(fallback);
}

bool Scenario::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = text(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ScenarioError(key, "expected true or false");
}

FourVectord Scenario::four_vector(const std::string& key) const {
  const auto v = list(key);
  if (v.size() != 4) throw ScenarioError(key, "expected four components");
  return FourVectord(v[0], v[1], v[2], v[3]);
}

std::vector<std::string> Scenario::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_) {
    if (!used_.count(k)) out.push_back(k);
  }
  return out;
}

SpectralDensity spectral_from_scenario(const Scenario& sc) {
  const std::string model = sc.text("spectral.model");
  try {
    if (model == "breit_wigner") {
      return SpectralDensity::breit_wigner(sc.number("spectral.mu0"),
                                           sc.number("spectral.gamma"));
    }
    if (model == "breit_wigner_truncated") {
      const double mu0 = sc.number("spectral.mu0");
      const double gamma = sc.number("spectral.gamma");
      if (sc.has("spectral.mu_min") || sc.has("spectral.mu_max")) {
        return SpectralDensity::breit_wigner_truncated(
            mu0, gamma, sc.number("spectral.mu_min"),
            sc.number("spectral.mu_max"));
      }
      return SpectralDensity::breit_wigner_truncated(
          mu0, gamma,
          sc.number("spectral.window", SpectralDensity::kDefaultWindow));
    }
    if (model == "tabulated") {
      std::filesystem::path file = sc.text("spectral.file");
      if (file.is_relative()) file = sc.base_dir() / file;
      return SpectralDensity::load_tabulated(file.string());
    }
    if (model == "point_mass") {
      return SpectralDensity::point_mass(sc.number("spectral.mu0"));
    }
  } catch (const DomainError& e) {
    throw ScenarioError("spectral", e.what());
  }
  throw ScenarioError("spectral.model", "unknown model '" + model + "'");
}

QuadratureConfig quadrature_from_scenario(const Scenario& sc) {
  QuadratureConfig cfg;
  cfg.rel_tol = sc.number("quadrature.rel_tol", cfg.rel_tol);
  const double panels =
      sc.number("quadrature.max_panels", static_cast<double>(cfg.max_panels));
  if (!(panels >= 1.0) || panels != std::floor(panels)) {
    throw ScenarioError("quadrature.max_panels", "must be a positive integer");
  }
  cfg.max_panels = static_cast<std::size_t>(panels);
  cfg.points_per_period =
      sc.number("quadrature.points_per_period", cfg.points_per_period);
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ScenarioError("quadrature", e.what());
  }
  return cfg;
}

}  // namespace hyperdecay
