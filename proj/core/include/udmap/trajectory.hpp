#pragma once

#include <optional>

namespace udmap {

/// Below this value of a*|tau| the hyperbolic combinations switch to Taylor series.
inline constexpr double kSeriesThreshold = 1e-6;

enum class SegmentTag { Inertial, Accelerated };

/// Kind of proper-time segment. Accelerated segments carry a strictly positive
/// acceleration (units 1/time); inertial segments carry none.
class SegmentKind {
 public:
  static SegmentKind inertial() { return SegmentKind(SegmentTag::Inertial, std::nullopt); }
  static SegmentKind accelerated(double acceleration);

  SegmentTag tag() const noexcept { return tag_; }
  bool is_accelerated() const noexcept { return tag_ == SegmentTag::Accelerated; }
  /// Acceleration of an accelerated segment. Throws DomainError for inertial ones.
  double acceleration() const;

 private:
  SegmentKind(SegmentTag tag, std::optional<double> a) : tag_(tag), acceleration_(a) {}

  SegmentTag tag_;
  std::optional<double> acceleration_;
};

/// Worldline event (t, x) and four-velocity (tdot, xdot) at proper time tau.
/// Metric signature (-,+): tdot^2 - xdot^2 = 1.
struct Kinematics {
  double t = 0.0;
  double x = 0.0;
  double tdot = 1.0;
  double xdot = 0.0;
};

/// Inertial: the rest worldline x = 0. Accelerated: the hyperbola through the
/// origin, t = sinh(a tau)/a, x = (cosh(a tau) - 1)/a.
Kinematics kinematics(const SegmentKind& kind, double tau);

/// sinh(a tau)/a, accurate for any a > 0 including a*|tau| -> 0.
double sinh_over(double a, double tau);

/// (cosh(a tau) - 1)/a, accurate for any a > 0 including a*|tau| -> 0.
double cosh_m1_over(double a, double tau);

/// (exp(a tau) - 1)/a, accurate for any a > 0 including a*|tau| -> 0.
double expm1_over(double a, double tau);

/// Segment durations and the acceleration of the combined trajectory: inertial
/// on [-inertial_duration, 0], then uniformly accelerated on [0, accel_duration].
struct TrajectoryPlan {
  double inertial_duration = 0.0;
  double acceleration = 1.0;
  double accel_duration = 0.0;

  /// a * accel_duration above this is rejected; the hyperbolic kernel terms grow
  /// like exp(a tau) and the integrands lose all significant digits past it.
  static constexpr double kMaxRapidity = 30.0;

  /// Throws DomainError on negative or non-finite durations, a <= 0, or a rapidity
  /// above kMaxRapidity.
  void validate() const;
};

}  // namespace udmap
