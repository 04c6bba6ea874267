#pragma once

#include <complex>
#include <string_view>

namespace udmap {

using cplx = std::complex<double>;

/// Two-level detector: gap omega (1/time), size epsilon (time) and complex
/// monopole coupling m = coupling_abs * exp(i coupling_phase).
struct DetectorParams {
  double omega = 1.0;
  double epsilon = 0.025;
  double coupling_abs = 0.05;
  double coupling_phase = 0.0;

  cplx coupling() const { return std::polar(coupling_abs, coupling_phase); }
  double coupling_sq() const { return coupling_abs * coupling_abs; }

  /// Throws DomainError unless omega > 0, epsilon > 0, coupling_abs >= 0, all finite.
  void validate() const;
};

/// Which kernel a (tau1, tau2) pair uses. First letter: the segment of tau1,
/// second letter: the segment of tau2 (I = inertial, A = accelerated).
enum class PairKind { II, AA, IA, AI };

std::string_view to_string(PairKind pair);

/// Peak value shared by every kernel at coincidence, 1/(16 pi^2 eps^2).
double coincidence_value(double epsilon);

/// Vacuum two-point function of the smeared field along the detector worldline.
///
///   II: -1/(4 pi^2 (d - 2i eps)^2), d = tau1 - tau2
///   AA: -1/(16 pi^2 [sinh(a d/2)/a - i eps cosh(a d/2)]^2)
///   IA: inertial tau1 on x = 0, accelerated tau2 on the hyperbola
///   AI: accelerated tau1, inertial tau2; AI(t1, t2) = conj(IA(t2, t1))
///
/// The acceleration is ignored for II. Throws DomainError for a <= 0 on the
/// other kinds and SingularityError if a denominator underflows.
cplx wightman(PairKind pair, double tau1, double tau2, double a, const DetectorParams& params);

/// Same kernel with the pair, acceleration and size bound once; cheap to copy
/// into integrand closures.
class WightmanKernel {
 public:
  WightmanKernel(PairKind pair, double acceleration, double epsilon);

  cplx operator()(double tau1, double tau2) const;

  PairKind pair() const noexcept { return pair_; }

 private:
  PairKind pair_;
  double a_;
  double eps_;
};

}  // namespace udmap
