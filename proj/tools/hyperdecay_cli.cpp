// hyperdecay: tabulate survival amplitudes, lifetimes, velocity-state
// contraction, hyperplane overlaps and two-point residuals from a scenario.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hyperdecay/commands.hpp"
#include "hyperdecay/errors.hpp"
#include "hyperdecay/scenario.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::string scenario;
  std::string out;
  std::string format;
  std::string units;
  unsigned threads = 1;
};

int run(const std::string& command, const Flags& flags) {
  using namespace hyperdecay;
  const Scenario sc = Scenario::load(flags.scenario);

  const std::string units_name =
      flags.units.empty() ? sc.text("units", "natural") : flags.units;
  if (units_name != "natural" && units_name != "physical") {
    throw ScenarioError("units", "expected natural or physical");
  }
  const std::string format =
      flags.format.empty() ? sc.text("output.format", "csv") : flags.format;
  if (format != "csv" && format != "json") {
    throw ScenarioError("output.format", "expected csv or json");
  }
  const std::string out_path =
      flags.out.empty() ? sc.text("output.path", "") : flags.out;

  RunOptions opt;
  opt.threads = flags.threads;
  opt.units = units_name == "physical" ? Units::physical : Units::natural;
  const Table table = run_command(command, sc, opt);

  std::ostringstream buf;
  const OutputMeta meta{sc.hash(), opt.units};
  if (format == "csv") {
    write_csv(buf, table, meta);
  } else {
    write_json(buf, table, meta);
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << buf.str();
    std::cout.flush();
  } else {
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << buf.str())) {
      throw ScenarioError("output.path", "cannot write '" + out_path + "'");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unstable-state survival and lifetime calculator"};
  app.set_version_flag("--version", std::string(HYPERDECAY_VERSION));
  app.require_subcommand(1);

  Flags flags;
  const char* descriptions[][2] = {
      {"survival", "survival amplitude over a tau grid"},
      {"lifetime", "lifetimes and dilation deviation over an s grid"},
      {"velocity", "velocity-eigenstate contraction over u and t grids"},
      {"overlap", "reduced inner product of states on two hyperplanes"},
      {"twopoint", "two-point residual over s and dtau grids"}};
  for (const auto& d : descriptions) {
    CLI::App* sub = app.add_subcommand(d[0], d[1]);
    sub->add_option("--scenario", flags.scenario, "scenario file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "output file (default: stdout)");
    sub->add_option("--format", flags.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", flags.threads, "worker threads")
        ->check(CLI::Range(1u, 1024u));
    sub->add_option("--units", flags.units, "natural or physical")
        ->check(CLI::IsMember({"natural", "physical"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, flags);
  } catch (const hyperdecay::ScenarioError& e) {
    std::cerr << "hyperdecay: invalid scenario: " << e.what() << '\n';
    return kExitValidation;
  } catch (const hyperdecay::DomainError& e) {
    std::cerr << "hyperdecay: invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const hyperdecay::ConvergenceError& e) {
    std::cerr << "hyperdecay: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "hyperdecay: " << e.what() << '\n';
    return kExitNumerical;
  }
}
