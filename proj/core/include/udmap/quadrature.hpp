#pragma once

#include <complex>
#include <functional>

namespace udmap {

using Integrand2D = std::function<std::complex<double>(double, double)>;

enum class RegionShape { Rect, LowerTriangle };

/// Integration domain in the (tau1, tau2) plane. LowerTriangle is the part of a
/// square with tau2 <= tau1.
struct Region {
  RegionShape shape = RegionShape::Rect;
  double t1_lo = 0.0;
  double t1_hi = 1.0;
  double t2_lo = 0.0;
  double t2_hi = 1.0;

  static Region rect(double t1_lo, double t1_hi, double t2_lo, double t2_hi);
  static Region lower_triangle(double lo, double hi);

  /// Throws DomainError on empty/inverted bounds or a non-square triangle.
  void validate() const;
};

struct QuadConfig {
  double rel_tol = 1e-6;
  double abs_tol = 1e-10;
  int max_depth = 18;
  /// Width of the ridge along tau1 = tau2 (the detector size). When positive,
  /// panels near the diagonal are pre-split at distances 2, 10 and 50 times
  /// this width before adaptivity starts. Zero disables seeding.
  double ridge_width = 0.0;
  /// Hard cap on the number of live panels.
  long max_panels = 400000;
};

struct QuadResult {
  std::complex<double> value{};
  double err_estimate = 0.0;
  long n_evals = 0;
  bool converged = false;
};

/// Globally adaptive tensor Gauss-Kronrod 7/15 cubature. Panels are bisected
/// along the axis with the larger Kronrod-Gauss difference until the summed
/// error estimate drops below max(abs_tol, rel_tol |value|). Triangles are
/// mapped onto a square by tau2 = lo + (tau1 - lo) s.
///
/// Hitting max_depth or max_panels returns converged = false with the best
/// estimate. A non-finite sample throws EvaluationError.
QuadResult integrate_2d(const Integrand2D& f, const Region& region, const QuadConfig& cfg = {});

/// Brute-force midpoint rule on an n x n grid of cells covering the region's
/// bounding rectangle. For triangles, cells whose midpoint lies below the
/// diagonal count fully and cells bisected by it count one half.
std::complex<double> riemann_oracle(const Integrand2D& f, const Region& region, int n);

}  // namespace udmap
