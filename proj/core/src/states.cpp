#include "udmap/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "udmap/errors.hpp"

namespace udmap {

namespace {

constexpr double kGuard = 0.5;

// Single-segment values: y for all four sign pairs, ty for +- and -+.
struct SegmentValues {
  cplx pp, pm, mp, mm;
  cplx ty_pm, ty_mp;
};

// Cross pairs have no time-ordered values; their ty slots stay zero.
SegmentValues segment(const CorrelatorSet& corr, PairKind pair) {
  SegmentValues v{corr.get_y(pair, kPP), corr.get_y(pair, kPM), corr.get_y(pair, kMP),
                  corr.get_y(pair, kMM), {}, {}};
  if (pair == PairKind::II || pair == PairKind::AA) {
    v.ty_pm = corr.get_ty(pair, kPM);
    v.ty_mp = corr.get_ty(pair, kMP);
  }
  return v;
}

double max_abs(std::initializer_list<cplx> values) {
  double m = 0.0;
  for (const cplx& v : values) m = std::max(m, std::abs(v));
  return m;
}

void guard(CoefficientSet& c, const DetectorParams& params, double max_y) {
  const double scale = params.coupling_sq() * max_y;
  if (scale >= kGuard) {
    c.warnings.push_back("perturbative guard: |m|^2 max|Y| = " + std::to_string(scale) +
                         " >= 0.5");
  }
}

CoefficientSet single(ScenarioTag tag, const SegmentValues& v, const DetectorParams& params) {
  const double m2 = params.coupling_sq();
  const cplx mc = std::conj(params.coupling());
  CoefficientSet c;
  c.tag = tag;
  c.alpha = 1.0 - m2 * v.ty_mp.real();
  c.beta = m2 * v.pm.real();
  c.gamma = 1.0 - m2 * v.ty_pm.real();
  c.eta = m2 * v.mp.real();
  c.kappa = 1.0 - 0.5 * m2 * (v.ty_mp + std::conj(v.ty_pm));
  c.lambda = mc * mc * v.mm;
  guard(c, params, max_abs({v.pp, v.pm, v.mp, v.mm, v.ty_pm, v.ty_mp}));
  return c;
}

}  // namespace

void BlochAngles::validate() const {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw DomainError("theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw DomainError("phi must lie in [0, 2 pi)");
}

std::string_view to_string(ScenarioTag tag) {
  switch (tag) {
    case ScenarioTag::Ini: return "ini";
    case ScenarioTag::Inertial: return "inertial";
    case ScenarioTag::Accelerated: return "accelerated";
    case ScenarioTag::Combined: return "combined";
  }
  return "?";
}

CoefficientSet coefficients(ScenarioTag tag, const CorrelatorSet& corr, const DetectorParams& params) {
  params.validate();
  switch (tag) {
    case ScenarioTag::Ini: return CoefficientSet::ini();
    case ScenarioTag::Inertial: return single(tag, segment(corr, PairKind::II), params);
    case ScenarioTag::Accelerated: return single(tag, segment(corr, PairKind::AA), params);
    case ScenarioTag::Combined: break;
  }

  const SegmentValues i = segment(corr, PairKind::II);
  const SegmentValues a = segment(corr, PairKind::AA);
  const SegmentValues ia = segment(corr, PairKind::IA);
  const SegmentValues ai = segment(corr, PairKind::AI);
  const double m2 = params.coupling_sq();
  const cplx mc = std::conj(params.coupling());

  CoefficientSet c;
  c.tag = tag;
  c.alpha = 1.0 - m2 * (i.ty_mp.real() + a.ty_mp.real() + (ia.mp + ai.mp).real());
  c.beta = m2 * (i.pm + a.pm + ia.pm + ai.pm).real();
  c.gamma = 1.0 - m2 * (i.ty_pm.real() + a.ty_pm.real() + (ia.pm + ai.pm).real());
  c.eta = m2 * (i.mp + a.mp + ia.mp + ai.mp).real();
  c.kappa = 1.0 - 0.5 * m2 *
                      (i.ty_mp + std::conj(i.ty_pm) + a.ty_mp + std::conj(a.ty_pm) +
                       2.0 * ai.mp + 2.0 * ia.pm);
  c.lambda = mc * mc * (i.mm + a.mm + ia.mm + ai.mm);

  double max_y = 0.0;
  for (const SegmentValues& v : {i, a, ia, ai}) {
    max_y = std::max(max_y, max_abs({v.pp, v.pm, v.mp, v.mm}));
  }
  max_y = std::max(max_y, max_abs({i.ty_pm, i.ty_mp, a.ty_pm, a.ty_mp}));
  guard(c, params, max_y);
  return c;
}

CoefficientSet coefficients_from_block(ScenarioTag tag, const BlockCorrelators& block,
                                       const DetectorParams& params) {
  params.validate();
  if (tag == ScenarioTag::Ini) return CoefficientSet::ini();
  if (tag == ScenarioTag::Combined) {
    throw DomainError("a single block cannot produce combined coefficients");
  }
  return single(tag, {block.y[0], block.y[1], block.y[2], block.y[3], block.ty[0], block.ty[1]},
                params);
}

DensityMatrix assemble_state(const CoefficientSet& coeffs, const BlochAngles& angles) {
  angles.validate();
  const double c2 = std::cos(angles.theta / 2.0);
  const double s2 = std::sin(angles.theta / 2.0);
  const double st = std::sin(angles.theta);
  const cplx em = std::polar(1.0, -angles.phi);
  const cplx ep = std::polar(1.0, angles.phi);
  DensityMatrix rho;
  rho.r00 = coeffs.alpha * c2 * c2 + coeffs.beta * s2 * s2;
  rho.r01 = st * (coeffs.kappa * em + coeffs.lambda * ep) / 2.0;
  rho.r10 = std::conj(rho.r01);
  rho.r11 = coeffs.gamma * s2 * s2 + coeffs.eta * c2 * c2;
  return rho;
}

DensityMatrix state_from_bloch(double x, double y, double z) {
  return {cplx{0.5 * (1.0 + z), 0.0}, cplx{0.5 * x, -0.5 * y}, cplx{0.5 * x, 0.5 * y},
          cplx{0.5 * (1.0 - z), 0.0}};
}

DensityReport density_checks(const DensityMatrix& rho) {
  DensityReport r;
  r.trace_dev = std::abs(rho.trace() - 1.0);
  r.herm_dev = std::abs(rho.r10 - std::conj(rho.r01)) + std::abs(rho.r00.imag()) +
               std::abs(rho.r11.imag());
  const double d0 = rho.r00.real();
  const double d1 = rho.r11.real();
  const cplx off = 0.5 * (rho.r01 + std::conj(rho.r10));
  const double half_gap = 0.5 * (d0 - d1);
  r.min_eig = 0.5 * (d0 + d1) - std::sqrt(half_gap * half_gap + std::norm(off));
  return r;
}

}  // namespace udmap
