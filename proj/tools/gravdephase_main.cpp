// Command-line front end: runs scenario files (or built-in scenarios)
// through the trace / report / average pipelines.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "gravdephase/gravdephase.hpp"

namespace gd = gravdephase;

namespace {

gd::units::ConstantsMode mode_from_string(const std::string& s,
                                          const std::string& origin) {
  if (s == "codata") return gd::units::ConstantsMode::codata;
  if (s == "paper") return gd::units::ConstantsMode::paper;
  throw gd::ParseError(origin + " must be \"codata\" or \"paper\", got \"" +
                       s + "\"");
}

// Flag beats environment beats the scenario document's own "constants" key.
std::optional<gd::units::ConstantsMode> resolve_mode_override(
    const std::string& flag_value) {
  if (!flag_value.empty()) {
    return mode_from_string(flag_value, "--constants");
  }
  if (const char* env = std::getenv("GRAVDEPHASE_CONSTANTS")) {
    return mode_from_string(env, "GRAVDEPHASE_CONSTANTS");
  }
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw gd::ParseError("cannot open scenario file \"" + path + "\"");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Built-in names take precedence over identically named files.
gd::cli::Scenario load_scenario(
    const std::string& ref,
    std::optional<gd::units::ConstantsMode> override_mode) {
  const std::string builtin = gd::cli::builtin_scenario_json(ref);
  if (!builtin.empty()) {
    return gd::cli::parse_scenario_text(builtin, ref, override_mode);
  }
  return gd::cli::parse_scenario_text(read_file(ref), ref, override_mode);
}

void write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file \"" + out_path + "\"");
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing output file \"" + out_path +
                             "\"");
  }
}

std::string dump(const gd::cli::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Gravitational time-dilation dephasing of mesoscopic superpositions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string constants_flag;
  app.add_option("--constants", constants_flag,
                 "Constant set: codata or paper (overrides the "
                 "GRAVDEPHASE_CONSTANTS environment variable and the "
                 "scenario's own setting)")
      ->check(CLI::IsMember({"codata", "paper"}));

  std::string scenario_ref;
  std::string out_path;
  double window_periods = 1000.0;
  std::size_t samples = 2;

  auto* trace_cmd = app.add_subcommand(
      "trace", "Visibility trace over a time grid, as CSV");
  trace_cmd->add_option("scenario", scenario_ref,
                        "Scenario file or built-in name "
                        "(two-level, thermal-cube, paper-repro)")
      ->required();
  trace_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* report_cmd = app.add_subcommand(
      "report", "Dephasing timescales and long-time bounds, as JSON");
  report_cmd->add_option("scenario", scenario_ref, "Scenario file or built-in name")
      ->required();
  report_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* repro_cmd = app.add_subcommand(
      "paper-repro",
      "Reproduce the published crossover-density estimate, as JSON");
  repro_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* average_cmd = app.add_subcommand(
      "average", "Long-time average of squared visibility, numeric vs analytic");
  average_cmd->add_option("scenario", scenario_ref, "Scenario file or built-in name")
      ->required();
  average_cmd->add_option("--window-periods", window_periods,
                          "Averaging window in slowest-beat periods");
  average_cmd->add_option("--samples", samples,
                          "Requested quadrature sample count (a resolution "
                          "floor may raise it)");
  average_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto override_mode = resolve_mode_override(constants_flag);
    if (*trace_cmd) {
      write_output(gd::cli::run_trace(load_scenario(scenario_ref, override_mode)),
                   out_path);
    } else if (*report_cmd) {
      write_output(
          dump(gd::cli::run_report(load_scenario(scenario_ref, override_mode))),
          out_path);
    } else if (*repro_cmd) {
      write_output(dump(gd::cli::run_paper_repro(override_mode)), out_path);
    } else if (*average_cmd) {
      write_output(
          dump(gd::cli::run_average(load_scenario(scenario_ref, override_mode),
                                    window_periods, samples)),
          out_path);
    }
    return 0;
  } catch (const gd::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const gd::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const gd::NumericDomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
