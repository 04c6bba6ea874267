#include "udmap/correlators.hpp"

#include <algorithm>
#include <cmath>

#include "udmap/errors.hpp"
#include "udmap/parallel.hpp"

namespace udmap {

namespace {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
};

Interval inertial_span(const TrajectoryPlan& plan) { return {-plan.inertial_duration, 0.0}; }
Interval accel_span(const TrajectoryPlan& plan) { return {0.0, plan.accel_duration}; }

// Domains of (tau1, tau2) for each kernel pair.
std::pair<Interval, Interval> pair_domain(PairKind pair, const TrajectoryPlan& plan) {
  switch (pair) {
    case PairKind::II: return {inertial_span(plan), inertial_span(plan)};
    case PairKind::AA: return {accel_span(plan), accel_span(plan)};
    case PairKind::IA: return {inertial_span(plan), accel_span(plan)};
    case PairKind::AI: return {accel_span(plan), inertial_span(plan)};
  }
  return {};
}

std::size_t pair_index(PairKind pair) { return static_cast<std::size_t>(pair); }

std::size_t sign_index(SignPair s) {
  for (std::size_t i = 0; i < kAllSigns.size(); ++i) {
    if (kAllSigns[i] == s) return i;
  }
  throw DomainError("sign components must be +1 or -1");
}

std::size_t ty_sign_index(SignPair s) {
  if (s == kPM) return 0;
  if (s == kMP) return 1;
  throw DomainError("time-ordered correlators exist only for signs +- and -+");
}

std::size_t ty_pair_index(PairKind pair) {
  if (pair == PairKind::II) return 0;
  if (pair == PairKind::AA) return 1;
  throw DomainError("time-ordered correlators exist only for the II and AA blocks");
}

Integrand2D make_integrand(bool time_ordered, PairKind pair, SignPair signs, double a,
                           const DetectorParams& params, const KernelFn& kernel) {
  const double w = params.omega;
  if (kernel) {
    if (time_ordered) {
      return [=](double t1, double t2) {
        return std::polar(1.0, w * signs.s1 * (t1 - t2)) * kernel(pair, t1, t2, a, params);
      };
    }
    return [=](double t1, double t2) {
      return std::polar(1.0, w * (signs.s1 * t1 + signs.s2 * t2)) * kernel(pair, t1, t2, a, params);
    };
  }
  const WightmanKernel wk(pair, a, params.epsilon);
  if (time_ordered) {
    return [=](double t1, double t2) { return std::polar(1.0, w * signs.s1 * (t1 - t2)) * wk(t1, t2); };
  }
  return [=](double t1, double t2) {
    return std::polar(1.0, w * (signs.s1 * t1 + signs.s2 * t2)) * wk(t1, t2);
  };
}

QuadConfig ridge_config(const QuadConfig& quad, const DetectorParams& params) {
  QuadConfig cfg = quad;
  cfg.ridge_width = params.epsilon;
  return cfg;
}

QuadResult integrate_spans(bool time_ordered, PairKind pair, SignPair signs, Interval first,
                           Interval second, double a, const DetectorParams& params,
                           const QuadConfig& quad, const KernelFn& kernel) {
  if (first.empty() || second.empty()) return {cplx{}, 0.0, 0, true};
  const Integrand2D f = make_integrand(time_ordered, pair, signs, a, params, kernel);
  const Region region = time_ordered ? Region::lower_triangle(first.lo, first.hi)
                                     : Region::rect(first.lo, first.hi, second.lo, second.hi);
  QuadResult r = integrate_2d(f, region, ridge_config(quad, params));
  if (time_ordered) {
    r.value *= 2.0;
    r.err_estimate *= 2.0;
  }
  return r;
}

void require_valid(const TrajectoryPlan& plan, const DetectorParams& params) {
  plan.validate();
  params.validate();
}

}  // namespace

std::string label(SignPair signs) {
  std::string s;
  s += signs.s1 > 0 ? '+' : '-';
  s += signs.s2 > 0 ? '+' : '-';
  return s;
}

std::string integral_id(bool time_ordered, PairKind pair, SignPair signs) {
  return std::string(time_ordered ? "ty_" : "y_") + std::string(to_string(pair)) + "_" + label(signs);
}

QuadResult y_value(PairKind pair, SignPair signs, const TrajectoryPlan& plan,
                   const DetectorParams& params, const QuadConfig& quad, const KernelFn& kernel) {
  require_valid(plan, params);
  sign_index(signs);
  const auto [first, second] = pair_domain(pair, plan);
  return integrate_spans(false, pair, signs, first, second, plan.acceleration, params, quad, kernel);
}

QuadResult ty_value(PairKind pair, SignPair signs, const TrajectoryPlan& plan,
                    const DetectorParams& params, const QuadConfig& quad, const KernelFn& kernel) {
  require_valid(plan, params);
  ty_pair_index(pair);
  ty_sign_index(signs);
  const auto [first, second] = pair_domain(pair, plan);
  return integrate_spans(true, pair, signs, first, second, plan.acceleration, params, quad, kernel);
}

bool correlator_integrand(bool time_ordered, PairKind pair, SignPair signs,
                          const TrajectoryPlan& plan, const DetectorParams& params,
                          const KernelFn& kernel, Region& region, Integrand2D& f, double& scale) {
  const auto [first, second] = pair_domain(pair, plan);
  if (first.empty() || second.empty()) return false;
  f = make_integrand(time_ordered, pair, signs, plan.acceleration, params, kernel);
  region = time_ordered ? Region::lower_triangle(first.lo, first.hi)
                        : Region::rect(first.lo, first.hi, second.lo, second.hi);
  scale = time_ordered ? 2.0 : 1.0;
  return true;
}

BlockCorrelators block_correlators(PairKind pair, double lo, double hi, double acceleration,
                                   const DetectorParams& params, const QuadConfig& quad) {
  if (pair != PairKind::II && pair != PairKind::AA) {
    throw DomainError("block correlators are defined for the stationary II and AA kernels");
  }
  params.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) throw DomainError("block needs lo <= hi");

  BlockCorrelators out;
  const Interval span{lo, hi};
  std::array<QuadResult, 6> results;
  parallel_for(6, [&](std::size_t k) {
    if (k < 4) {
      results[k] = integrate_spans(false, pair, kAllSigns[k], span, span, acceleration, params, quad, {});
    } else {
      const SignPair s = k == 4 ? kPM : kMP;
      results[k] = integrate_spans(true, pair, s, span, span, acceleration, params, quad, {});
    }
  });
  for (std::size_t k = 0; k < 6; ++k) {
    (k < 4 ? out.y[k] : out.ty[k - 4]) = results[k].value;
    out.err = std::max(out.err, results[k].err_estimate);
    out.converged = out.converged && results[k].converged;
  }
  return out;
}

cplx CorrelatorSet::get_y(PairKind pair, SignPair signs) const {
  return y[pair_index(pair)][sign_index(signs)];
}

cplx CorrelatorSet::get_ty(PairKind pair, SignPair signs) const {
  return ty[ty_pair_index(pair)][ty_sign_index(signs)];
}

cplx& CorrelatorSet::at_y(PairKind pair, SignPair signs) {
  return y[pair_index(pair)][sign_index(signs)];
}

cplx& CorrelatorSet::at_ty(PairKind pair, SignPair signs) {
  return ty[ty_pair_index(pair)][ty_sign_index(signs)];
}

double CorrelatorSet::tol_real() const { return std::max(1e-8, 10.0 * err); }

std::vector<InvariantCheck> CorrelatorSet::check_invariants() const {
  const double tol = tol_real();
  std::vector<InvariantCheck> out;
  auto add = [&](std::string name, double dev) {
    out.push_back({std::move(name), dev, tol, dev <= tol});
  };

  for (PairKind k : {PairKind::II, PairKind::AA}) {
    const std::string tag(to_string(k));
    add("real_y_" + tag + "_+-", std::abs(get_y(k, kPM).imag()));
    add("real_y_" + tag + "_-+", std::abs(get_y(k, kMP).imag()));
    add("re_ty_eq_y_" + tag + "_+-", std::abs(get_ty(k, kPM).real() - get_y(k, kPM)));
    add("re_ty_eq_y_" + tag + "_-+", std::abs(get_ty(k, kMP).real() - get_y(k, kMP)));
    add("conj_y_" + tag + "_++_--", std::abs(get_y(k, kPP) - std::conj(get_y(k, kMM))));
  }
  for (SignPair s : kAllSigns) {
    const SignPair mirrored{-s.s2, -s.s1};
    add("conj_y_IA_" + label(s) + "_AI_" + label(mirrored),
        std::abs(get_y(PairKind::IA, s) - std::conj(get_y(PairKind::AI, mirrored))));
  }
  return out;
}

CorrelatorSet correlator_set(const TrajectoryPlan& plan, const DetectorParams& params,
                             const QuadConfig& quad, const KernelFn& kernel) {
  require_valid(plan, params);

  struct Task {
    bool time_ordered;
    PairKind pair;
    SignPair signs;
  };
  std::vector<Task> tasks;
  for (PairKind p : kAllPairs) {
    for (SignPair s : kAllSigns) tasks.push_back({false, p, s});
  }
  for (PairKind p : {PairKind::II, PairKind::AA}) {
    for (SignPair s : {kPM, kMP}) tasks.push_back({true, p, s});
  }

  std::vector<QuadResult> results(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    const Task& t = tasks[i];
    const auto [first, second] = pair_domain(t.pair, plan);
    results[i] = integrate_spans(t.time_ordered, t.pair, t.signs, first, second, plan.acceleration,
                                 params, quad, kernel);
  });

  CorrelatorSet set;
  set.plan = plan;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& t = tasks[i];
    (t.time_ordered ? set.at_ty(t.pair, t.signs) : set.at_y(t.pair, t.signs)) = results[i].value;
    set.err = std::max(set.err, results[i].err_estimate);
    if (!results[i].converged) {
      set.converged = false;
      set.nonconverged.push_back(integral_id(t.time_ordered, t.pair, t.signs));
    }
  }
  return set;
}

}  // namespace udmap
