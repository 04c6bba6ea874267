#include "udmap/trajectory.hpp"

#include <cmath>
#include <string>

#include "udmap/errors.hpp"

namespace udmap {

SegmentKind SegmentKind::accelerated(double acceleration) {
  if (!std::isfinite(acceleration) || acceleration <= 0.0) {
    throw DomainError("accelerated segment requires a finite acceleration > 0, got " +
                      std::to_string(acceleration));
  }
  return SegmentKind(SegmentTag::Accelerated, acceleration);
}

double SegmentKind::acceleration() const {
  if (!acceleration_) throw DomainError("inertial segment has no acceleration");
  return *acceleration_;
}

// Series are carried through (a tau)^4 relative to the leading term; below the
// threshold the next term is < 1e-30 relative.

double sinh_over(double a, double tau) {
  const double x = a * tau;
  if (std::abs(x) < kSeriesThreshold) {
    const double x2 = x * x;
    return tau * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
  }
  return std::sinh(x) / a;
}

double cosh_m1_over(double a, double tau) {
  const double x = a * tau;
  if (std::abs(x) < kSeriesThreshold) {
    const double x2 = x * x;
    return 0.5 * a * tau * tau * (1.0 + x2 / 12.0 + x2 * x2 / 360.0);
  }
  const double s = std::sinh(0.5 * x);
  return 2.0 * s * s / a;
}

double expm1_over(double a, double tau) {
  const double x = a * tau;
  if (std::abs(x) < kSeriesThreshold) {
    return tau * (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0 + x * x * x * x / 120.0);
  }
  return std::expm1(x) / a;
}

Kinematics kinematics(const SegmentKind& kind, double tau) {
  if (!std::isfinite(tau)) throw DomainError("kinematics: non-finite proper time");
  if (!kind.is_accelerated()) return {tau, 0.0, 1.0, 0.0};

  const double a = kind.acceleration();
  const double x = a * tau;
  return {sinh_over(a, tau), cosh_m1_over(a, tau), std::cosh(x), std::sinh(x)};
}

void TrajectoryPlan::validate() const {
  auto duration_ok = [](double d) { return std::isfinite(d) && d >= 0.0; };
  if (!duration_ok(inertial_duration)) {
    throw DomainError("inertial_duration must be finite and >= 0");
  }
  if (!duration_ok(accel_duration)) throw DomainError("accel_duration must be finite and >= 0");
  if (!std::isfinite(acceleration) || acceleration <= 0.0) {
    throw DomainError("acceleration must be finite and > 0");
  }
  if (acceleration * accel_duration > kMaxRapidity) {
    throw DomainError("a * accel_duration = " + std::to_string(acceleration * accel_duration) +
                      " exceeds the supported rapidity " + std::to_string(kMaxRapidity));
  }
}

}  // namespace udmap
