#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "udmap/config.hpp"
#include "udmap/correlators.hpp"
#include "udmap/maps.hpp"
#include "udmap/states.hpp"

namespace udmap {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitQuadrature = 3;
inline constexpr int kExitInvariant = 4;

/// Everything computed for one trajectory plan.
struct ScenarioResult {
  TrajectoryPlan plan;
  CorrelatorSet corr;
  CoefficientSet inertial;
  CoefficientSet accelerated;
  CoefficientSet combined;
  double tol_cls = 1e-8;

  /// Coefficients at the start of the accelerated phase: inertial, or ini when t = 0.
  const CoefficientSet& phase_start() const;
  AMatrix map(MapKind kind) const;
};

KernelFn kernel_for(const TestHooks& hooks);

ScenarioResult compute_scenario(const ScenarioConfig& cfg, const TrajectoryPlan& plan);

/// Correlator identities, trace preservation, map structure, spectrum sums,
/// angle-grid defining property and composition consistency for one scenario.
std::vector<InvariantCheck> scenario_invariants(const ScenarioResult& result,
                                                const DetectorParams& params);

/// Kernel-level identities (coincidence value, Hermiticity, a -> 0 reduction).
std::vector<InvariantCheck> kernel_invariants(const ScenarioConfig& cfg);

struct SweepRow {
  double value = 0.0;
  CPReport report;
  bool converged = true;
};

/// One row per sweep value, in order. Throws ConfigError without a sweep block.
std::vector<SweepRow> sweep_rows(const ScenarioConfig& cfg);

/// Fixed-format number: 17 significant digits, '.' decimal separator.
std::string format_number(double v);

// Subcommands. Each writes its files into out_dir, logs to `log`, and returns an
// exit code (kExitOk, kExitQuadrature, kExitInvariant).
int run_command(const ScenarioConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int sweep_eigs_command(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                       std::ostream& log);
int bloch_scan_command(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                       std::ostream& log);
int verify_command(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                   std::ostream& log);
int oracle_compare_command(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                           std::ostream& log);

}  // namespace udmap
