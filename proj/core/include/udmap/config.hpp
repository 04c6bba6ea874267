#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "udmap/quadrature.hpp"
#include "udmap/trajectory.hpp"
#include "udmap/wightman.hpp"

namespace udmap {

/// Which dynamical map a sweep or scan reports.
enum class MapKind {
  AcceleratedPhase,  // rho_0(0) -> rho_0a(T); ini -> combined when t = 0
  IniToInertial,     // rho_ini -> rho_0 after the inertial segment
  IniToAccelerated,  // rho_ini -> rho_a after an accelerated segment of length T
  IniToCombined,     // rho_ini -> rho_0a(T)
};

std::string_view to_string(MapKind kind);

enum class SweepVariable { AccelDuration, InertialDuration, Acceleration };

struct SweepConfig {
  SweepVariable variable = SweepVariable::AccelDuration;
  std::vector<double> values;
  MapKind map = MapKind::AcceleratedPhase;
};

struct BlochConfig {
  int n_samples = 2000;
  MapKind map = MapKind::AcceleratedPhase;
};

struct OutputConfig {
  std::string directory = ".";
  std::vector<std::string> formats{"json", "csv"};
};

struct OracleConfig {
  int n = 600;
};

/// Scenario grid for the verify subcommand.
struct VerifyConfig {
  std::vector<double> inertial_durations{0.0, 0.25, 0.5, 1.0, 2.0};
  std::vector<double> accel_durations{0.0, 0.25, 0.5, 1.0, 2.0};
  std::vector<double> accelerations{1.0, 2.0, 3.0, 4.0};
};

/// Deliberate faults for checking that verification catches them.
struct TestHooks {
  bool flip_ai_kernel_sign = false;
};

struct ScenarioConfig {
  DetectorParams detector;
  TrajectoryPlan trajectory;
  QuadConfig quadrature;
  std::optional<SweepConfig> sweep;
  BlochConfig bloch;
  OutputConfig output;
  OracleConfig oracle;
  VerifyConfig verify;
  TestHooks hooks;

  /// Quadrature settings with the ridge width bound to the detector size.
  QuadConfig quad() const;
};

/// Parses the JSON scenario description. Missing blocks take their defaults.
/// Throws ConfigError on malformed JSON, unknown enum strings, wrong types or
/// values that violate the owning types' invariants.
ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Uniform grid lo + (hi - lo) k / count, k = 1..count (excludes lo).
std::vector<double> uniform_grid(double lo, double hi, int count);

}  // namespace udmap
