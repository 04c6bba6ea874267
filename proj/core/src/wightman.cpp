#include "udmap/wightman.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "udmap/errors.hpp"
#include "udmap/trajectory.hpp"

namespace udmap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvFourPiSq = 1.0 / (4.0 * kPi * kPi);
constexpr double kTinyDenominator = 1e-300;

void require_acceleration(double a) {
  if (!std::isfinite(a) || a <= 0.0) {
    throw DomainError("accelerated kernels require a finite acceleration > 0");
  }
}

cplx reciprocal_checked(cplx denom, PairKind pair, double tau1, double tau2) {
  if (std::abs(denom) < kTinyDenominator) {
    throw SingularityError("singular " + std::string(to_string(pair)) + " kernel at (" +
                           std::to_string(tau1) + ", " + std::to_string(tau2) + ")");
  }
  return 1.0 / denom;
}

// The cross kernels are -1/(4 pi^2) / (A^2 - B^2); both are evaluated as
// (A - B)(A + B) where every factor is free of cancellation:
//   S + C = (e^{a tau} - 1)/a,  S - C = (1 - e^{-a tau})/a,
//   1 + cosh + sinh = 1 + e^{a tau},  1 + cosh - sinh = 1 + e^{-a tau}.

cplx kernel_ia(double tau1, double tau2, double a, double eps) {
  const double up = expm1_over(a, tau2);     // S + C
  const double down = -expm1_over(a, -tau2); // S - C
  const cplx minus{tau1 - up, -eps * (1.0 + std::exp(a * tau2))};
  const cplx plus{tau1 - down, -eps * (1.0 + std::exp(-a * tau2))};
  return -kInvFourPiSq * reciprocal_checked(minus * plus, PairKind::IA, tau1, tau2);
}

cplx kernel_ai(double tau1, double tau2, double a, double eps) {
  const double up = expm1_over(a, tau1);
  const double down = -expm1_over(a, -tau1);
  const cplx minus{down - tau2, -eps * (1.0 + std::exp(-a * tau1))};
  const cplx plus{up - tau2, -eps * (1.0 + std::exp(a * tau1))};
  return -kInvFourPiSq * reciprocal_checked(minus * plus, PairKind::AI, tau1, tau2);
}

cplx kernel_ii(double tau1, double tau2, double eps) {
  const cplx d{tau1 - tau2, -2.0 * eps};
  return -kInvFourPiSq * reciprocal_checked(d * d, PairKind::II, tau1, tau2);
}

cplx kernel_aa(double tau1, double tau2, double a, double eps) {
  const double half = 0.5 * (tau1 - tau2);
  const cplx d{sinh_over(a, half), -eps * std::cosh(a * half)};
  return -0.25 * kInvFourPiSq * reciprocal_checked(d * d, PairKind::AA, tau1, tau2);
}

}  // namespace

void DetectorParams::validate() const {
  if (!std::isfinite(omega) || omega <= 0.0) throw DomainError("omega must be finite and > 0");
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw DomainError("epsilon must be finite and > 0");
  }
  if (!std::isfinite(coupling_abs) || coupling_abs < 0.0) {
    throw DomainError("coupling_abs must be finite and >= 0");
  }
  if (!std::isfinite(coupling_phase)) throw DomainError("coupling_phase must be finite");
}

std::string_view to_string(PairKind pair) {
  switch (pair) {
    case PairKind::II: return "II";
    case PairKind::AA: return "AA";
    case PairKind::IA: return "IA";
    case PairKind::AI: return "AI";
  }
  return "?";
}

double coincidence_value(double epsilon) {
  return 1.0 / (16.0 * kPi * kPi * epsilon * epsilon);
}

cplx wightman(PairKind pair, double tau1, double tau2, double a, const DetectorParams& params) {
  if (!std::isfinite(tau1) || !std::isfinite(tau2)) throw DomainError("kernel arguments must be finite");
  return WightmanKernel(pair, a, params.epsilon)(tau1, tau2);
}

WightmanKernel::WightmanKernel(PairKind pair, double acceleration, double epsilon)
    : pair_(pair), a_(acceleration), eps_(epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) throw DomainError("epsilon must be > 0");
  if (pair != PairKind::II) require_acceleration(acceleration);
}

cplx WightmanKernel::operator()(double tau1, double tau2) const {
  switch (pair_) {
    case PairKind::II: return kernel_ii(tau1, tau2, eps_);
    case PairKind::AA: return kernel_aa(tau1, tau2, a_, eps_);
    case PairKind::IA: return kernel_ia(tau1, tau2, a_, eps_);
    case PairKind::AI: return kernel_ai(tau1, tau2, a_, eps_);
  }
  return {};
}

}  // namespace udmap
