#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "udmap/correlators.hpp"
#include "udmap/wightman.hpp"

namespace udmap {

/// Pure initial state cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>.
struct BlochAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  void validate() const;
};

enum class ScenarioTag { Ini, Inertial, Accelerated, Combined };

std::string_view to_string(ScenarioTag tag);

/// The six numbers parameterizing the reduced detector state for every initial
/// Bloch angle: diagonal (alpha, beta, gamma, eta) and coherences (kappa, lambda).
struct CoefficientSet {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
  double eta = 0.0;
  cplx kappa{1.0, 0.0};
  cplx lambda{0.0, 0.0};
  ScenarioTag tag = ScenarioTag::Ini;
  std::vector<std::string> warnings;

  /// The switch-on state: (1, 0, 1, 0, 1, 0).
  static CoefficientSet ini() { return {}; }

  double trace_dev_alpha_eta() const { return std::abs(alpha + eta - 1.0); }
  double trace_dev_beta_gamma() const { return std::abs(beta + gamma - 1.0); }
};

/// Coefficients after inertial, accelerated, or inertial-then-accelerated motion.
/// Inertial/Accelerated consume only the II/AA block of corr. Appends a warning
/// when |m|^2 max|Y| >= 0.5 (outside the weak-coupling regime).
CoefficientSet coefficients(ScenarioTag tag, const CorrelatorSet& corr, const DetectorParams& params);

/// Same formulas for a single-segment block computed on an arbitrary interval.
CoefficientSet coefficients_from_block(ScenarioTag tag, const BlockCorrelators& block,
                                       const DetectorParams& params);

struct DensityMatrix {
  cplx r00{1.0, 0.0};
  cplx r01{};
  cplx r10{};
  cplx r11{};

  cplx trace() const { return r00 + r11; }
};

DensityMatrix assemble_state(const CoefficientSet& coeffs, const BlochAngles& angles);

/// Pure state with Bloch vector (x, y, z), |r| = 1 not enforced.
DensityMatrix state_from_bloch(double x, double y, double z);

struct DensityReport {
  double trace_dev = 0.0;  // |tr rho - 1|
  double herm_dev = 0.0;   // |rho10 - conj(rho01)| + |Im rho00| + |Im rho11|
  double min_eig = 0.0;    // smallest eigenvalue of the Hermitian part
};

DensityReport density_checks(const DensityMatrix& rho);

}  // namespace udmap
