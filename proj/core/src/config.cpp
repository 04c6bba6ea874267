#include "udmap/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "udmap/errors.hpp"

namespace udmap {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::set<std::string> known) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

MapKind parse_map(const std::string& s) {
  if (s == "accelerated_phase") return MapKind::AcceleratedPhase;
  if (s == "ini_to_inertial") return MapKind::IniToInertial;
  if (s == "ini_to_accelerated") return MapKind::IniToAccelerated;
  if (s == "ini_to_combined") return MapKind::IniToCombined;
  throw ConfigError("unknown map '" + s + "'");
}

SweepVariable parse_variable(const std::string& s) {
  if (s == "T") return SweepVariable::AccelDuration;
  if (s == "t") return SweepVariable::InertialDuration;
  if (s == "a") return SweepVariable::Acceleration;
  throw ConfigError("unknown sweep variable '" + s + "' (expected T, t or a)");
}

void read_map(const json& obj, MapKind& out, const std::string& where) {
  std::string s;
  read(obj, "map", s, where);
  if (!s.empty()) out = parse_map(s);
}

void strictly_increasing(const std::vector<double>& v, const std::string& where) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) throw ConfigError(where + " must be strictly increasing");
  }
}

TrajectoryPlan with_value(TrajectoryPlan plan, SweepVariable var, double v) {
  switch (var) {
    case SweepVariable::AccelDuration: plan.accel_duration = v; break;
    case SweepVariable::InertialDuration: plan.inertial_duration = v; break;
    case SweepVariable::Acceleration: plan.acceleration = v; break;
  }
  return plan;
}

SweepConfig parse_sweep(const json& j) {
  reject_unknown(j, "sweep", {"variable", "values", "uniform", "map"});
  SweepConfig s;
  std::string var;
  read(j, "variable", var, "sweep");
  if (var.empty()) throw ConfigError("sweep.variable is required");
  s.variable = parse_variable(var);
  read_map(j, s.map, "sweep");
  const bool has_values = j.contains("values");
  const bool has_uniform = j.contains("uniform");
  if (has_values == has_uniform) throw ConfigError("sweep needs exactly one of values or uniform");
  if (has_values) {
    read(j, "values", s.values, "sweep");
  } else {
    const json& u = j.at("uniform");
    reject_unknown(u, "sweep.uniform", {"lo", "hi", "count"});
    double lo = 0.0, hi = 0.0;
    int count = 0;
    read(u, "lo", lo, "sweep.uniform");
    read(u, "hi", hi, "sweep.uniform");
    read(u, "count", count, "sweep.uniform");
    if (count < 1 || !(hi > lo)) throw ConfigError("sweep.uniform needs hi > lo and count >= 1");
    s.values = uniform_grid(lo, hi, count);
  }
  if (s.values.empty()) throw ConfigError("sweep has no values");
  strictly_increasing(s.values, "sweep.values");
  return s;
}

void validate(const ScenarioConfig& cfg) {
  try {
    cfg.detector.validate();
    cfg.trajectory.validate();
    if (cfg.sweep) {
      for (double v : cfg.sweep->values) with_value(cfg.trajectory, cfg.sweep->variable, v).validate();
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const QuadConfig& q = cfg.quadrature;
  if (!(q.rel_tol > 0.0) || !(q.abs_tol >= 0.0)) {
    throw ConfigError("quadrature tolerances must satisfy rel_tol > 0, abs_tol >= 0");
  }
  if (q.max_depth < 1 || q.max_depth > 40) throw ConfigError("quadrature.max_depth must be in [1, 40]");
  if (q.max_panels < 1) throw ConfigError("quadrature.max_panels must be positive");
  if (cfg.bloch.n_samples < 12) throw ConfigError("bloch.n_samples must be at least 12");
  if (cfg.oracle.n < 1) throw ConfigError("oracle.n must be positive");
  for (const std::string& f : cfg.output.formats) {
    if (f != "json" && f != "csv") throw ConfigError("unknown output format '" + f + "'");
  }
  auto check_grid = [](const std::vector<double>& v, const std::string& where, bool positive) {
    for (double x : v) {
      if (!std::isfinite(x) || x < 0.0 || (positive && x == 0.0)) {
        throw ConfigError(where + " contains an invalid value");
      }
    }
  };
  check_grid(cfg.verify.inertial_durations, "verify.inertial_durations", false);
  check_grid(cfg.verify.accel_durations, "verify.accel_durations", false);
  check_grid(cfg.verify.accelerations, "verify.accelerations", true);
}

}  // namespace

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::AcceleratedPhase: return "accelerated_phase";
    case MapKind::IniToInertial: return "ini_to_inertial";
    case MapKind::IniToAccelerated: return "ini_to_accelerated";
    case MapKind::IniToCombined: return "ini_to_combined";
  }
  return "?";
}

QuadConfig ScenarioConfig::quad() const {
  QuadConfig q = quadrature;
  q.ridge_width = detector.epsilon;
  return q;
}

ScenarioConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  reject_unknown(root, "config",
                 {"detector", "trajectory", "quadrature", "sweep", "bloch", "output", "oracle",
                  "verify", "test_hooks"});

  ScenarioConfig cfg;
  if (root.contains("detector")) {
    const json& j = root["detector"];
    reject_unknown(j, "detector", {"omega", "epsilon", "coupling_abs", "coupling_phase"});
    read(j, "omega", cfg.detector.omega, "detector");
    read(j, "epsilon", cfg.detector.epsilon, "detector");
    read(j, "coupling_abs", cfg.detector.coupling_abs, "detector");
    read(j, "coupling_phase", cfg.detector.coupling_phase, "detector");
  }
  if (root.contains("trajectory")) {
    const json& j = root["trajectory"];
    reject_unknown(j, "trajectory", {"inertial_duration", "acceleration", "accel_duration"});
    read(j, "inertial_duration", cfg.trajectory.inertial_duration, "trajectory");
    read(j, "acceleration", cfg.trajectory.acceleration, "trajectory");
    read(j, "accel_duration", cfg.trajectory.accel_duration, "trajectory");
  }
  if (root.contains("quadrature")) {
    const json& j = root["quadrature"];
    reject_unknown(j, "quadrature", {"rel_tol", "abs_tol", "max_depth", "max_panels"});
    read(j, "rel_tol", cfg.quadrature.rel_tol, "quadrature");
    read(j, "abs_tol", cfg.quadrature.abs_tol, "quadrature");
    read(j, "max_depth", cfg.quadrature.max_depth, "quadrature");
    read(j, "max_panels", cfg.quadrature.max_panels, "quadrature");
  }
  if (root.contains("sweep")) cfg.sweep = parse_sweep(root["sweep"]);
  if (root.contains("bloch")) {
    const json& j = root["bloch"];
    reject_unknown(j, "bloch", {"n_samples", "map"});
    read(j, "n_samples", cfg.bloch.n_samples, "bloch");
    read_map(j, cfg.bloch.map, "bloch");
  }
  if (root.contains("output")) {
    const json& j = root["output"];
    reject_unknown(j, "output", {"directory", "formats"});
    read(j, "directory", cfg.output.directory, "output");
    read(j, "formats", cfg.output.formats, "output");
  }
  if (root.contains("oracle")) {
    const json& j = root["oracle"];
    reject_unknown(j, "oracle", {"n"});
    read(j, "n", cfg.oracle.n, "oracle");
  }
  if (root.contains("verify")) {
    const json& j = root["verify"];
    reject_unknown(j, "verify", {"inertial_durations", "accel_durations", "accelerations"});
    read(j, "inertial_durations", cfg.verify.inertial_durations, "verify");
    read(j, "accel_durations", cfg.verify.accel_durations, "verify");
    read(j, "accelerations", cfg.verify.accelerations, "verify");
  }
  if (root.contains("test_hooks")) {
    const json& j = root["test_hooks"];
    reject_unknown(j, "test_hooks", {"flip_ai_kernel_sign"});
    read(j, "flip_ai_kernel_sign", cfg.hooks.flip_ai_kernel_sign, "test_hooks");
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 1) throw DomainError("uniform grid needs count >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) out.push_back(lo + (hi - lo) * k / count);
  return out;
}

}  // namespace udmap
