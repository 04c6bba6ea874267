// udmap: scenario runner for detector dynamical maps.
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "udmap/errors.hpp"
#include "udmap/pipeline.hpp"

namespace {

using Command = std::function<int(const udmap::ScenarioConfig&, const std::filesystem::path&,
                                  std::ostream&)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical maps of a finite-size two-level detector on inertial and accelerated paths"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<int> samples;
  std::optional<double> tol;

  const std::map<std::string, std::pair<std::string, Command>> commands{
      {"run", {"Compute one scenario: map.json, state.csv, report.json", udmap::run_command}},
      {"sweep-eigs", {"B-matrix spectrum over the sweep block: eigs.csv", udmap::sweep_eigs_command}},
      {"bloch-scan", {"Image of the Bloch sphere under the map: points.csv", udmap::bloch_scan_command}},
      {"verify", {"Invariant suite over the verify grid: report.json", udmap::verify_command}},
      {"oracle-compare", {"Adaptive cubature vs midpoint oracle: oracle.csv", udmap::oracle_compare_command}},
  };

  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "Scenario JSON file")->required();
    sub->add_option("--out", out_dir, "Output directory (default: output.directory)");
    sub->add_option("--samples", samples,
                    "Bloch sample count (bloch-scan) or oracle grid size (oracle-compare)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", tol, "Quadrature relative tolerance")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : udmap::kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  udmap::ScenarioConfig cfg;
  try {
    cfg = udmap::load_config(config_path);
    if (tol) cfg.quadrature.rel_tol = *tol;
    if (samples) {
      if (name == "oracle-compare") {
        cfg.oracle.n = *samples;
      } else {
        if (*samples < 12) throw udmap::ConfigError("--samples must be at least 12");
        cfg.bloch.n_samples = *samples;
      }
    }
    if (name == "sweep-eigs" && !cfg.sweep) throw udmap::ConfigError("sweep-eigs needs a sweep block");
  } catch (const udmap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return udmap::kExitConfig;
  }

  const std::filesystem::path out = out_dir.empty() ? cfg.output.directory : out_dir;
  try {
    return commands.at(name).second(cfg, out, std::cout);
  } catch (const udmap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return udmap::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return udmap::kExitInvariant;
  }
}
