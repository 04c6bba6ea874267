#include "udmap/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "udmap/errors.hpp"
#include "udmap/parallel.hpp"

namespace udmap {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const CoefficientSet kIni = CoefficientSet::ini();

constexpr std::array<MapKind, 4> kAllMaps{MapKind::AcceleratedPhase, MapKind::IniToInertial,
                                          MapKind::IniToAccelerated, MapKind::IniToCombined};

bool wants(const ScenarioConfig& cfg, const std::string& format) {
  const auto& f = cfg.output.formats;
  return std::find(f.begin(), f.end(), format) != f.end();
}

cplx eval_kernel(const KernelFn& k, PairKind pair, double t1, double t2, double a,
                 const DetectorParams& p) {
  return k ? k(pair, t1, t2, a, p) : wightman(pair, t1, t2, a, p);
}

TrajectoryPlan with_value(TrajectoryPlan plan, SweepVariable var, double v) {
  switch (var) {
    case SweepVariable::AccelDuration: plan.accel_duration = v; break;
    case SweepVariable::InertialDuration: plan.inertial_duration = v; break;
    case SweepVariable::Acceleration: plan.acceleration = v; break;
  }
  return plan;
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

json matrix_json(const Mat4& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const cplx& v : row) r.push_back(complex_json(v));
    rows.push_back(r);
  }
  return rows;
}

json coeffs_json(const CoefficientSet& c) {
  return {{"tag", std::string(to_string(c.tag))},
          {"alpha", c.alpha},
          {"beta", c.beta},
          {"gamma", c.gamma},
          {"eta", c.eta},
          {"kappa", complex_json(c.kappa)},
          {"lambda", complex_json(c.lambda)},
          {"warnings", c.warnings}};
}

json checks_json(const std::vector<InvariantCheck>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    out.push_back({{"name", c.name}, {"deviation", c.deviation}, {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  }
  return out;
}

bool all_pass(const std::vector<InvariantCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.pass; });
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) row += ',';
    row += c;
    first = false;
  }
  return row + '\n';
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void log_nonconverged(const CorrelatorSet& corr, std::ostream& log) {
  for (const auto& id : corr.nonconverged) log << "warning: quadrature did not converge for " << id << "\n";
}

}  // namespace

const CoefficientSet& ScenarioResult::phase_start() const {
  return plan.inertial_duration > 0.0 ? inertial : kIni;
}

AMatrix ScenarioResult::map(MapKind kind) const {
  switch (kind) {
    case MapKind::AcceleratedPhase: return solve_a_map(combined, phase_start());
    case MapKind::IniToInertial: return solve_a_map(inertial, kIni);
    case MapKind::IniToAccelerated: return solve_a_map(accelerated, kIni);
    case MapKind::IniToCombined: return solve_a_map(combined, kIni);
  }
  throw DomainError("unknown map kind");
}

KernelFn kernel_for(const TestHooks& hooks) {
  if (!hooks.flip_ai_kernel_sign) return {};
  return [](PairKind pair, double t1, double t2, double a, const DetectorParams& p) {
    const cplx w = wightman(pair, t1, t2, a, p);
    return pair == PairKind::AI ? -w : w;
  };
}

ScenarioResult compute_scenario(const ScenarioConfig& cfg, const TrajectoryPlan& plan) {
  ScenarioResult r;
  r.plan = plan;
  r.corr = correlator_set(plan, cfg.detector, cfg.quad(), kernel_for(cfg.hooks));
  r.inertial = coefficients(ScenarioTag::Inertial, r.corr, cfg.detector);
  r.accelerated = coefficients(ScenarioTag::Accelerated, r.corr, cfg.detector);
  r.combined = coefficients(ScenarioTag::Combined, r.corr, cfg.detector);
  r.tol_cls = classification_tolerance(r.corr.err);
  return r;
}

std::vector<InvariantCheck> scenario_invariants(const ScenarioResult& result,
                                                const DetectorParams& params) {
  std::vector<InvariantCheck> out = result.corr.check_invariants();
  auto add = [&](std::string name, double dev, double tol) {
    out.push_back({std::move(name), dev, tol, dev <= tol});
  };

  const double tol_coeff = std::max(1e-8, params.coupling_sq() * result.corr.tol_real());
  for (const CoefficientSet* c : {&result.inertial, &result.accelerated, &result.combined}) {
    const std::string tag(to_string(c->tag));
    add("trace_alpha_eta_" + tag, c->trace_dev_alpha_eta(), tol_coeff);
    add("trace_beta_gamma_" + tag, c->trace_dev_beta_gamma(), tol_coeff);
    add("nonneg_beta_" + tag, std::max(0.0, -c->beta), tol_coeff);
    add("nonneg_eta_" + tag, std::max(0.0, -c->eta), tol_coeff);
  }

  for (MapKind kind : kAllMaps) {
    const std::string tag(to_string(kind));
    AMatrix a;
    try {
      a = result.map(kind);
    } catch (const SingularMapError&) {
      add("solvable_" + tag, 1.0, 0.0);
      continue;
    }
    double zeros = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const bool allowed = (i == 0 || i == 3) ? (j == 0 || j == 3) : (j == 1 || j == 2);
        if (!allowed) zeros = std::max(zeros, std::abs(a(i, j)));
      }
    }
    add("a_structure_zeros_" + tag, zeros, 0.0);
    add("a_hermiticity_" + tag,
        std::max({std::abs(a(2, 1) - std::conj(a(1, 2))), std::abs(a(2, 2) - std::conj(a(1, 1))),
                  std::abs(a(0, 0).imag()), std::abs(a(0, 3).imag()), std::abs(a(3, 0).imag()),
                  std::abs(a(3, 3).imag())}),
        1e-12);
    const BMatrix b = reshuffle(a);
    // The diagonal of B collects the population block of A.
    add("b_trace_" + tag, std::abs(b.trace() - (a(0, 0) + a(0, 3) + a(3, 0) + a(3, 3))), 1e-12);
    add("b_trace_two_" + tag, std::abs(b.trace() - 2.0), tol_coeff);
    try {
      const auto eigs = hermitian_eigs(b);
      add("b_spectrum_sum_" + tag,
          std::abs(eigs[0] + eigs[1] + eigs[2] + eigs[3] - b.trace().real()), 1e-10);
    } catch (const InconsistencyError&) {
      add("b_hermitian_" + tag, b.hermiticity_dev(), 1e-8);
    }
  }

  // Defining property of the main map and trace of the images on an angle grid.
  try {
    const AMatrix a = result.map(MapKind::AcceleratedPhase);
    double defining = 0.0;
    double trace = 0.0;
    for (int i = 0; i <= 6; ++i) {
      for (int k = 0; k < 8; ++k) {
        const BlochAngles ang{std::numbers::pi * i / 6.0, 2.0 * std::numbers::pi * k / 8.0};
        const DensityMatrix got = apply_map(a, assemble_state(result.phase_start(), ang));
        const DensityMatrix want = assemble_state(result.combined, ang);
        defining = std::max({defining, std::abs(got.r00 - want.r00), std::abs(got.r01 - want.r01),
                             std::abs(got.r10 - want.r10), std::abs(got.r11 - want.r11)});
        trace = std::max(trace, density_checks(want).trace_dev);
      }
    }
    add("map_defining_property", defining, 1e-10);
    add("combined_state_trace", trace, tol_coeff);

    const Mat4 composed = a.m * result.map(MapKind::IniToInertial).m;
    const double dev = result.plan.inertial_duration > 0.0
                           ? max_abs_diff(result.map(MapKind::IniToCombined).m, composed)
                           : max_abs_diff(result.map(MapKind::IniToCombined).m, a.m);
    add("map_composition", dev, 1e-8);
  } catch (const SingularMapError&) {
    add("solvable_main_map", 1.0, 0.0);
  }
  return out;
}

std::vector<InvariantCheck> kernel_invariants(const ScenarioConfig& cfg) {
  const KernelFn k = kernel_for(cfg.hooks);
  const DetectorParams& p = cfg.detector;
  std::vector<InvariantCheck> out;
  auto add = [&](std::string name, double dev, double tol) {
    out.push_back({std::move(name), dev, tol, dev <= tol});
  };

  const double w0 = coincidence_value(p.epsilon);
  for (double a : cfg.verify.accelerations) {
    for (PairKind pair : kAllPairs) {
      add("coincidence_" + std::string(to_string(pair)) + "_a" + format_number(a),
          std::abs(eval_kernel(k, pair, 0.0, 0.0, a, p) - w0) / w0, 1e-12);
    }
  }

  double conj_dev = 0.0;
  double herm_dev = 0.0;
  for (double a : cfg.verify.accelerations) {
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const double t1 = -2.0 + 4.0 * i / 19.0;
        const double t2 = -2.0 + 4.0 * j / 19.0;
        const cplx ai = eval_kernel(k, PairKind::AI, t1, t2, a, p);
        const cplx ia = eval_kernel(k, PairKind::IA, t2, t1, a, p);
        conj_dev = std::max(conj_dev, std::abs(ai - std::conj(ia)) / std::max(1.0, std::abs(ai)));
        for (PairKind pair : {PairKind::II, PairKind::AA}) {
          const cplx w12 = eval_kernel(k, pair, t1, t2, a, p);
          const cplx w21 = eval_kernel(k, pair, t2, t1, a, p);
          herm_dev = std::max(herm_dev, std::abs(w12 - std::conj(w21)) / std::max(1.0, std::abs(w12)));
        }
      }
    }
  }
  add("kernel_conjugation_ai_ia", conj_dev, 1e-12);
  add("kernel_hermiticity_ii_aa", herm_dev, 1e-12);

  double reduction = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t1 = -1.0 + 2.0 * i / 19.0;
    const double t2 = 0.3;
    const cplx ii = eval_kernel(k, PairKind::II, t1, t2, 1.0, p);
    for (PairKind pair : {PairKind::AA, PairKind::IA, PairKind::AI}) {
      const cplx w = eval_kernel(k, pair, t1, t2, 1e-6, p);
      reduction = std::max(reduction, std::abs(w - ii) / std::abs(ii));
    }
  }
  add("kernel_small_acceleration", reduction, 1e-4);
  return out;
}

std::vector<SweepRow> sweep_rows(const ScenarioConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep-eigs needs a sweep block");
  const SweepConfig& sweep = *cfg.sweep;
  std::vector<SweepRow> rows(sweep.values.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const double v = sweep.values[i];
    const ScenarioResult r = compute_scenario(cfg, with_value(cfg.trajectory, sweep.variable, v));
    rows[i].value = v;
    rows[i].report = cp_report(r.map(sweep.map), r.tol_cls);
    rows[i].converged = r.corr.converged;
  });
  return rows;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run_command(const ScenarioConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  const ScenarioResult r = compute_scenario(cfg, cfg.trajectory);
  fs::create_directories(out_dir);

  json maps = json::object();
  json classifications = json::object();
  for (MapKind kind : kAllMaps) {
    const AMatrix a = r.map(kind);
    const CPReport rep = cp_report(a, r.tol_cls);
    maps[std::string(to_string(kind))] = {
        {"A", matrix_json(a.m)},
        {"B", matrix_json(reshuffle(a).m)},
        {"eigs", rep.eigs},
        {"second_smallest", rep.second_smallest},
        {"classification", std::string(to_string(rep.classification))}};
    classifications[std::string(to_string(kind))] = std::string(to_string(rep.classification));
  }
  const std::vector<InvariantCheck> checks = scenario_invariants(r, cfg.detector);
  const bool pass = all_pass(checks);

  if (wants(cfg, "json")) {
    write_json(out_dir / "map.json",
               {{"main_map", "accelerated_phase"},
                {"tol_cls", r.tol_cls},
                {"coefficients",
                 {{"inertial", coeffs_json(r.inertial)},
                  {"accelerated", coeffs_json(r.accelerated)},
                  {"combined", coeffs_json(r.combined)}}},
                {"maps", maps}});
  }

  if (wants(cfg, "csv")) {
    std::string csv = csv_row({"theta", "phi", "stage", "r00_re", "r00_im", "r01_re", "r01_im",
                               "r10_re", "r10_im", "r11_re", "r11_im", "trace_dev", "min_eig"});
    const std::array<std::pair<const char*, const CoefficientSet*>, 3> stages{
        {{"ini", &kIni}, {"inertial", &r.inertial}, {"combined", &r.combined}}};
    for (int i = 0; i <= 8; ++i) {
      for (int k = 0; k < 8; ++k) {
        const BlochAngles ang{std::numbers::pi * i / 8.0, 2.0 * std::numbers::pi * k / 8.0};
        for (const auto& [name, coeffs] : stages) {
          const DensityMatrix rho = assemble_state(*coeffs, ang);
          const DensityReport d = density_checks(rho);
          csv += csv_row({format_number(ang.theta), format_number(ang.phi), name,
                          format_number(rho.r00.real()), format_number(rho.r00.imag()),
                          format_number(rho.r01.real()), format_number(rho.r01.imag()),
                          format_number(rho.r10.real()), format_number(rho.r10.imag()),
                          format_number(rho.r11.real()), format_number(rho.r11.imag()),
                          format_number(d.trace_dev), format_number(d.min_eig)});
        }
      }
    }
    write_text(out_dir / "state.csv", csv);
  }

  if (wants(cfg, "json")) {
    write_json(out_dir / "report.json",
               {{"plan",
                 {{"inertial_duration", r.plan.inertial_duration},
                  {"acceleration", r.plan.acceleration},
                  {"accel_duration", r.plan.accel_duration}}},
                {"correlator_err", r.corr.err},
                {"converged", r.corr.converged},
                {"nonconverged", r.corr.nonconverged},
                {"trace_dev",
                 {{"inertial", r.inertial.trace_dev_alpha_eta() + r.inertial.trace_dev_beta_gamma()},
                  {"accelerated",
                   r.accelerated.trace_dev_alpha_eta() + r.accelerated.trace_dev_beta_gamma()},
                  {"combined", r.combined.trace_dev_alpha_eta() + r.combined.trace_dev_beta_gamma()}}},
                {"classification", classifications},
                {"invariants", checks_json(checks)},
                {"pass", pass && r.corr.converged},
                {"wall_time_s", seconds_since(start)}});
  }

  log << "main map " << to_string(MapKind::AcceleratedPhase) << ": "
      << classifications["accelerated_phase"].get<std::string>() << "\n";
  if (!r.corr.converged) {
    log_nonconverged(r.corr, log);
    return kExitQuadrature;
  }
  if (!pass) {
    for (const auto& c : checks) {
      if (!c.pass) log << "invariant failed: " << c.name << " deviation " << c.deviation << "\n";
    }
    return kExitInvariant;
  }
  return kExitOk;
}

int sweep_eigs_command(const ScenarioConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const std::vector<SweepRow> rows = sweep_rows(cfg);
  fs::create_directories(out_dir);
  std::string csv = csv_row({"sweep_value", "eig1", "eig2", "eig3", "eig4", "classification", "status"});
  bool converged = true;
  for (const SweepRow& row : rows) {
    const auto& e = row.report.eigs;
    csv += csv_row({format_number(row.value), format_number(e[0]), format_number(e[1]),
                    format_number(e[2]), format_number(e[3]),
                    std::string(to_string(row.report.classification)),
                    row.converged ? "ok" : "nonconverged"});
    converged = converged && row.converged;
  }
  write_text(out_dir / "eigs.csv", csv);
  log << rows.size() << " sweep rows written\n";
  if (!converged) {
    log << "warning: some rows did not converge (status column)\n";
    return kExitQuadrature;
  }
  return kExitOk;
}

int bloch_scan_command(const ScenarioConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const ScenarioResult r = compute_scenario(cfg, cfg.trajectory);
  const BlochImage img = bloch_image(r.map(cfg.bloch.map), cfg.bloch.n_samples - 6);
  fs::create_directories(out_dir);
  std::string csv = csv_row({"in_x", "in_y", "in_z", "out_x", "out_y", "out_z", "min_eig", "outside"});
  for (const BlochSample& s : img.samples) {
    csv += csv_row({format_number(s.in[0]), format_number(s.in[1]), format_number(s.in[2]),
                    format_number(s.out[0]), format_number(s.out[1]), format_number(s.out[2]),
                    format_number(s.min_eig), s.outside ? "1" : "0"});
  }
  write_text(out_dir / "points.csv", csv);
  log << "outside_fraction=" << format_number(img.outside_fraction)
      << " max_excess=" << format_number(img.max_excess) << "\n";
  if (!r.corr.converged) {
    log_nonconverged(r.corr, log);
    return kExitQuadrature;
  }
  return kExitOk;
}

int verify_command(const ScenarioConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  const VerifyConfig& grid = cfg.verify;
  std::vector<TrajectoryPlan> plans;
  for (double a : grid.accelerations) {
    for (double t : grid.inertial_durations) {
      for (double T : grid.accel_durations) plans.push_back({t, a, T});
    }
  }

  struct Outcome {
    std::vector<InvariantCheck> checks;
    double err = 0.0;
    bool converged = true;
    std::string error;
  };
  std::vector<Outcome> outcomes(plans.size());
  parallel_for(plans.size(), [&](std::size_t i) {
    try {
      plans[i].validate();
      const ScenarioResult r = compute_scenario(cfg, plans[i]);
      outcomes[i].checks = scenario_invariants(r, cfg.detector);
      outcomes[i].err = r.corr.err;
      outcomes[i].converged = r.corr.converged;
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });

  const std::vector<InvariantCheck> kchecks = kernel_invariants(cfg);
  bool pass = all_pass(kchecks);
  bool converged = true;
  std::size_t n_checks = kchecks.size();
  std::size_t n_failed = 0;
  json scenarios = json::array();
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const Outcome& o = outcomes[i];
    const bool ok = o.error.empty() && all_pass(o.checks);
    pass = pass && ok;
    converged = converged && o.converged;
    n_checks += o.checks.size();
    json failed = json::array();
    for (const auto& c : o.checks) {
      if (!c.pass) {
        ++n_failed;
        failed.push_back({{"name", c.name}, {"deviation", c.deviation}, {"tolerance", c.tolerance}});
        log << "FAIL t=" << plans[i].inertial_duration << " a=" << plans[i].acceleration
            << " T=" << plans[i].accel_duration << ": " << c.name << " deviation " << c.deviation
            << " > " << c.tolerance << "\n";
      }
    }
    if (!o.error.empty()) log << "ERROR t=" << plans[i].inertial_duration << ": " << o.error << "\n";
    scenarios.push_back({{"inertial_duration", plans[i].inertial_duration},
                         {"acceleration", plans[i].acceleration},
                         {"accel_duration", plans[i].accel_duration},
                         {"correlator_err", o.err},
                         {"converged", o.converged},
                         {"n_checks", o.checks.size()},
                         {"failed", failed},
                         {"error", o.error},
                         {"pass", ok}});
  }
  for (const auto& c : kchecks) {
    if (!c.pass) {
      ++n_failed;
      log << "FAIL kernel: " << c.name << " deviation " << c.deviation << " > " << c.tolerance << "\n";
    }
  }

  fs::create_directories(out_dir);
  write_json(out_dir / "report.json", {{"pass", pass && converged},
                                       {"n_scenarios", plans.size()},
                                       {"n_checks", n_checks},
                                       {"n_failed", n_failed},
                                       {"kernel_checks", checks_json(kchecks)},
                                       {"scenarios", scenarios},
                                       {"wall_time_s", seconds_since(start)}});
  log << "verify: " << plans.size() << " scenarios, " << n_checks << " checks, " << n_failed
      << " failed\n";
  if (!converged) return kExitQuadrature;
  return pass ? kExitOk : kExitInvariant;
}

int oracle_compare_command(const ScenarioConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const TrajectoryPlan& plan = cfg.trajectory;
  const KernelFn kernel = kernel_for(cfg.hooks);
  const CorrelatorSet corr = correlator_set(plan, cfg.detector, cfg.quad(), kernel);

  struct Row {
    std::string id;
    cplx adaptive;
    cplx oracle;
  };
  std::vector<Row> rows;
  for (PairKind p : kAllPairs) {
    for (SignPair s : kAllSigns) rows.push_back({integral_id(false, p, s), corr.get_y(p, s), {}});
  }
  for (PairKind p : {PairKind::II, PairKind::AA}) {
    for (SignPair s : {kPM, kMP}) rows.push_back({integral_id(true, p, s), corr.get_ty(p, s), {}});
  }
  parallel_for(rows.size(), [&](std::size_t i) {
    const bool time_ordered = i >= 16;
    const PairKind pair = time_ordered ? (i < 18 ? PairKind::II : PairKind::AA) : kAllPairs[i / 4];
    const SignPair signs = time_ordered ? ((i % 2) == 0 ? kPM : kMP) : kAllSigns[i % 4];
    Region region;
    Integrand2D f;
    double scale = 1.0;
    if (correlator_integrand(time_ordered, pair, signs, plan, cfg.detector, kernel, region, f, scale)) {
      rows[i].oracle = scale * riemann_oracle(f, region, cfg.oracle.n);
    }
  });

  fs::create_directories(out_dir);
  std::string csv = csv_row({"id", "adaptive_re", "adaptive_im", "oracle_re", "oracle_im", "abs_diff"});
  double worst = 0.0;
  for (const Row& r : rows) {
    const double diff = std::abs(r.adaptive - r.oracle);
    worst = std::max(worst, diff / (std::abs(r.adaptive) + 1.0));
    csv += csv_row({r.id, format_number(r.adaptive.real()), format_number(r.adaptive.imag()),
                    format_number(r.oracle.real()), format_number(r.oracle.imag()),
                    format_number(diff)});
  }
  write_text(out_dir / "oracle.csv", csv);
  log << "oracle n=" << cfg.oracle.n << " max abs_diff/(|value|+1) = " << format_number(worst) << "\n";
  if (!corr.converged) {
    log_nonconverged(corr, log);
    return kExitQuadrature;
  }
  return kExitOk;
}

}  // namespace udmap
