#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "udmap/quadrature.hpp"
#include "udmap/trajectory.hpp"
#include "udmap/wightman.hpp"

namespace udmap {

/// Signs of the phase exp(i omega (s1 tau1 + s2 tau2)).
struct SignPair {
  int s1 = 1;
  int s2 = 1;

  friend bool operator==(const SignPair&, const SignPair&) = default;
};

inline constexpr SignPair kPP{+1, +1};
inline constexpr SignPair kPM{+1, -1};
inline constexpr SignPair kMP{-1, +1};
inline constexpr SignPair kMM{-1, -1};
inline constexpr std::array<SignPair, 4> kAllSigns{kPP, kPM, kMP, kMM};
inline constexpr std::array<PairKind, 4> kAllPairs{PairKind::II, PairKind::AA, PairKind::IA,
                                                   PairKind::AI};

std::string label(SignPair signs);  // "+-" etc.

/// Kernel override used by correlator_set; defaults to udmap::wightman.
using KernelFn = std::function<cplx(PairKind, double, double, double, const DetectorParams&)>;

/// Plain correlator over the pair's segment domain:
///   II: [-t, 0]^2, AA: [0, T]^2, IA: [-t, 0] x [0, T], AI: [0, T] x [-t, 0].
/// An empty domain returns exactly zero with converged = true.
QuadResult y_value(PairKind pair, SignPair signs, const TrajectoryPlan& plan,
                   const DetectorParams& params, const QuadConfig& quad = {},
                   const KernelFn& kernel = {});

/// Time-ordered correlator 2 * (integral over tau2 <= tau1) for the diagonal
/// blocks II and AA and signs +- or -+.
QuadResult ty_value(PairKind pair, SignPair signs, const TrajectoryPlan& plan,
                    const DetectorParams& params, const QuadConfig& quad = {},
                    const KernelFn& kernel = {});

/// Correlators of a single stationary segment [lo, hi] with kernel II or AA.
/// Used directly for one-segment maps of arbitrary extent.
struct BlockCorrelators {
  std::array<cplx, 4> y{};   // indexed like kAllSigns
  std::array<cplx, 2> ty{};  // +-, -+
  double err = 0.0;
  bool converged = true;
};

BlockCorrelators block_correlators(PairKind pair, double lo, double hi, double acceleration,
                                   const DetectorParams& params, const QuadConfig& quad = {});

/// One named identity check: |deviation| <= tolerance.
struct InvariantCheck {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

/// All correlators a scenario needs.
struct CorrelatorSet {
  std::array<std::array<cplx, 4>, 4> y{};   // [pair][signs]
  std::array<std::array<cplx, 2>, 2> ty{};  // [II|AA][+-|-+]
  double err = 0.0;                          // max quadrature error estimate
  bool converged = true;
  std::vector<std::string> nonconverged;     // ids of offending integrals
  TrajectoryPlan plan;

  cplx get_y(PairKind pair, SignPair signs) const;
  cplx get_ty(PairKind pair, SignPair signs) const;
  cplx& at_y(PairKind pair, SignPair signs);
  cplx& at_ty(PairKind pair, SignPair signs);

  /// max(1e-8, 10 err): tolerance for identities that hold only for exact integrals.
  double tol_real() const;

  /// Realness of Y+-/Y-+ and Re(TY) = Y for II and AA, and the cross-block
  /// conjugation y[IA][s1 s2] = conj(y[AI][-s2 -s1]).
  std::vector<InvariantCheck> check_invariants() const;
};

/// Evaluates every member integral of the scenario. Independent integrals run
/// on the shared worker pool (see parallelism()).
CorrelatorSet correlator_set(const TrajectoryPlan& plan, const DetectorParams& params,
                             const QuadConfig& quad = {}, const KernelFn& kernel = {});

/// Integration id used in reports: "y_IA_+-", "ty_AA_-+".
std::string integral_id(bool time_ordered, PairKind pair, SignPair signs);

/// Region and integrand of one correlator, for oracle comparisons. Returns
/// false for an empty domain.
bool correlator_integrand(bool time_ordered, PairKind pair, SignPair signs,
                          const TrajectoryPlan& plan, const DetectorParams& params,
                          const KernelFn& kernel, Region& region, Integrand2D& f,
                          double& scale);

}  // namespace udmap
