#ifndef HYPERDECAY_SCENARIO_HPP
#define HYPERDECAY_SCENARIO_HPP

// Scenario files: one `key = value` per line, '#' comments, dotted keys.
// A `[section]` line prefixes the keys below it with `section.`. Lists are
// comma separated; `linspace(a, b, n)` expands to n evenly spaced values.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperdecay/minkowski.hpp"
#include "hyperdecay/quadrature.hpp"
#include "hyperdecay/spectral.hpp"

namespace hyperdecay {

/// Invalid scenario content. `field()` names the offending key.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);

class Scenario {
 public:
  static Scenario parse(const std::string& text,
                        const std::filesystem::path& base_dir = {});
  static Scenario load(const std::filesystem::path& path);

  /// Hash of the raw file bytes.
  std::uint64_t hash() const { return hash_; }
  const std::filesystem::path& base_dir() const { return base_dir_; }

  bool has(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::vector<double> list(const std::string& key) const;
  std::vector<double> list(const std::string& key,
                           std::vector<double> fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  FourVectord four_vector(const std::string& key) const;

  /// Keys that were never read. Commands call this after reading to reject
  /// misspelled fields.
  std::vector<std::string> unused_keys() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
  std::uint64_t hash_ = 0;
  std::filesystem::path base_dir_;
};

/// spectral.model = breit_wigner | breit_wigner_truncated | tabulated |
///                  point_mass, with mu0, gamma, window or mu_min/mu_max,
///                  file (relative to the scenario).
SpectralDensity spectral_from_scenario(const Scenario& sc);

/// quadrature.rel_tol, quadrature.max_panels, quadrature.points_per_period
QuadratureConfig quadrature_from_scenario(const Scenario& sc);

}  // namespace hyperdecay

#endif  // HYPERDECAY_SCENARIO_HPP
