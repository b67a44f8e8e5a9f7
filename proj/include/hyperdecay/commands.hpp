#ifndef HYPERDECAY_COMMANDS_HPP
#define HYPERDECAY_COMMANDS_HPP

// Tabulation of the library over scenario grids, and the CSV/JSON writers
// used by the command-line front end.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "hyperdecay/scenario.hpp"

namespace hyperdecay {

/// hbar in MeV s. Physical mode reads masses in MeV and times in seconds.
inline constexpr double kHbarMeVSeconds = 6.582119569e-22;

enum class Units { natural, physical };

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  ///< booleans stored as 0 / 1
};

struct RunOptions {
  unsigned threads = 1;
  Units units = Units::natural;
};

/// Commands: survival, lifetime, velocity, overlap, twopoint. Throws
/// ScenarioError for invalid input, ConvergenceError for numerical failure.
/// Rows come out in grid order whatever the thread count.
Table run_command(const std::string& command, const Scenario& sc,
                  const RunOptions& opt = {});

struct OutputMeta {
  std::uint64_t scenario_hash = 0;
  Units units = Units::natural;
};

/// '#' header (version, command, scenario hash, units), then one header row
/// and the data; %.17g, LF line endings.
void write_csv(std::ostream& out, const Table& t, const OutputMeta& meta);

/// Stable key order; non-finite values become null.
void write_json(std::ostream& out, const Table& t, const OutputMeta& meta);

std::string to_string(Units u);

}  // namespace hyperdecay

#endif  // HYPERDECAY_COMMANDS_HPP
