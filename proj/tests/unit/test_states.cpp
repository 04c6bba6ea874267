#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "udmap/correlators.hpp"
#include "udmap/errors.hpp"
#include "udmap/states.hpp"

using namespace udmap;
using std::numbers::pi;

namespace {

const DetectorParams kParams{};

bool same(const DensityMatrix& a, const DensityMatrix& b, double tol) {
  return std::abs(a.r00 - b.r00) <= tol && std::abs(a.r01 - b.r01) <= tol &&
         std::abs(a.r10 - b.r10) <= tol && std::abs(a.r11 - b.r11) <= tol;
}

}  // namespace

TEST_SUITE("states") {
  TEST_CASE("switch-on coefficients") {
    const CoefficientSet c = CoefficientSet::ini();
    CHECK(c.alpha == 1.0);
    CHECK(c.beta == 0.0);
    CHECK(c.gamma == 1.0);
    CHECK(c.eta == 0.0);
    CHECK(c.kappa == cplx{1.0, 0.0});
    CHECK(c.lambda == cplx{});
    CHECK(coefficients(ScenarioTag::Ini, CorrelatorSet{}, kParams).alpha == 1.0);
  }

  TEST_CASE("zero coupling gives the switch-on coefficients") {
    DetectorParams p = kParams;
    p.coupling_abs = 0.0;
    const CorrelatorSet set = correlator_set({1.0, 3.0, 1.0}, p, {});
    for (ScenarioTag tag : {ScenarioTag::Inertial, ScenarioTag::Accelerated, ScenarioTag::Combined}) {
      const CoefficientSet c = coefficients(tag, set, p);
      CHECK(c.alpha == 1.0);
      CHECK(c.beta == 0.0);
      CHECK(c.gamma == 1.0);
      CHECK(c.eta == 0.0);
      CHECK(c.kappa == cplx{1.0, 0.0});
      CHECK(c.lambda == cplx{});
    }
  }

  TEST_CASE("inertial formulas") {
    const CorrelatorSet set = correlator_set({1.0, 3.0, 1.0}, kParams, {});
    const CoefficientSet c = coefficients(ScenarioTag::Inertial, set, kParams);
    const double m2 = 0.05 * 0.05;
    CHECK(c.alpha == doctest::Approx(1.0 - m2 * set.get_ty(PairKind::II, kMP).real()));
    CHECK(c.beta == doctest::Approx(m2 * set.get_y(PairKind::II, kPM).real()));
    CHECK(c.eta == doctest::Approx(m2 * set.get_y(PairKind::II, kMP).real()));
    const cplx kappa = 1.0 - 0.5 * m2 * (set.get_ty(PairKind::II, kMP) + std::conj(set.get_ty(PairKind::II, kPM)));
    CHECK(std::abs(c.kappa - kappa) < 1e-15);
    CHECK(std::abs(c.lambda - m2 * set.get_y(PairKind::II, kMM)) < 1e-15);
    CHECK(c.tag == ScenarioTag::Inertial);
  }

  TEST_CASE("coupling phase enters lambda only") {
    DetectorParams p = kParams;
    p.coupling_phase = 0.7;
    const CorrelatorSet set = correlator_set({1.0, 3.0, 1.0}, p, {});
    const CoefficientSet c0 = coefficients(ScenarioTag::Combined, set, kParams);
    const CoefficientSet c1 = coefficients(ScenarioTag::Combined, set, p);
    CHECK(c1.alpha == c0.alpha);
    CHECK(c1.kappa == c0.kappa);
    CHECK(std::abs(c1.lambda - c0.lambda * std::polar(1.0, -1.4)) < 1e-15);
  }

  TEST_CASE("trace preservation and smallness across the grid") {
    for (double a : {1.0, 2.0, 3.0, 4.0}) {
      for (double t : {0.0, 0.5, 2.0}) {
        for (double T : {0.0, 0.25, 2.0}) {
          const CorrelatorSet set = correlator_set({t, a, T}, kParams, {});
          for (ScenarioTag tag : {ScenarioTag::Inertial, ScenarioTag::Accelerated, ScenarioTag::Combined}) {
            const CoefficientSet c = coefficients(tag, set, kParams);
            CHECK(c.trace_dev_alpha_eta() < 1e-8);
            CHECK(c.trace_dev_beta_gamma() < 1e-8);
            CHECK(c.beta >= -1e-10);
            CHECK(c.eta >= -1e-10);
            CHECK(c.beta <= 0.05);
            CHECK(c.eta <= 0.05);
            CHECK(c.warnings.empty());
          }
        }
      }
    }
  }

  TEST_CASE("perturbative guard warns but still returns") {
    DetectorParams p = kParams;
    p.coupling_abs = 2.0;
    const CorrelatorSet set = correlator_set({1.0, 3.0, 1.0}, p, {});
    const CoefficientSet c = coefficients(ScenarioTag::Combined, set, p);
    CHECK_FALSE(c.warnings.empty());
    CHECK(std::isfinite(c.alpha));
  }

  TEST_CASE("block coefficients match the scenario coefficients") {
    const CorrelatorSet set = correlator_set({1.0, 3.0, 0.0}, kParams, {});
    const BlockCorrelators b = block_correlators(PairKind::II, -1.0, 0.0, 3.0, kParams, {});
    const CoefficientSet x = coefficients(ScenarioTag::Inertial, set, kParams);
    const CoefficientSet y = coefficients_from_block(ScenarioTag::Inertial, b, kParams);
    CHECK(x.alpha == y.alpha);
    CHECK(x.lambda == y.lambda);
    CHECK_THROWS_AS(coefficients_from_block(ScenarioTag::Combined, b, kParams), DomainError);
  }

  TEST_CASE("assemble_state on the switch-on coefficients") {
    const CoefficientSet c = CoefficientSet::ini();
    CHECK(same(assemble_state(c, {0.0, 0.0}), {1.0, 0.0, 0.0, 0.0}, 1e-15));
    CHECK(same(assemble_state(c, {pi, 0.0}), {0.0, 0.0, 0.0, 1.0}, 1e-15));
    CHECK(same(assemble_state(c, {pi / 2.0, 0.0}), {0.5, 0.5, 0.5, 0.5}, 1e-15));
    CHECK_THROWS_AS(assemble_state(c, {-0.1, 0.0}), DomainError);
    CHECK_THROWS_AS(assemble_state(c, {0.1, 2.0 * pi}), DomainError);
  }

  TEST_CASE("assemble_state is linear in the coefficients") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      CoefficientSet a, b;
      for (CoefficientSet* c : {&a, &b}) {
        c->alpha = u(rng);
        c->beta = u(rng);
        c->gamma = u(rng);
        c->eta = u(rng);
        c->kappa = {u(rng), u(rng)};
        c->lambda = {u(rng), u(rng)};
      }
      const double w = 0.25;  // dyadic weight keeps the combination exact
      CoefficientSet m;
      m.alpha = w * a.alpha + (1 - w) * b.alpha;
      m.beta = w * a.beta + (1 - w) * b.beta;
      m.gamma = w * a.gamma + (1 - w) * b.gamma;
      m.eta = w * a.eta + (1 - w) * b.eta;
      m.kappa = w * a.kappa + (1 - w) * b.kappa;
      m.lambda = w * a.lambda + (1 - w) * b.lambda;
      const BlochAngles ang{pi * u(rng), 2.0 * pi * u(rng) * 0.999};
      const DensityMatrix ra = assemble_state(a, ang), rb = assemble_state(b, ang);
      const DensityMatrix rm = assemble_state(m, ang);
      const DensityMatrix mix{w * ra.r00 + (1 - w) * rb.r00, w * ra.r01 + (1 - w) * rb.r01,
                              w * ra.r10 + (1 - w) * rb.r10, w * ra.r11 + (1 - w) * rb.r11};
      CHECK(same(rm, mix, 1e-15));
    }
  }

  TEST_CASE("density checks") {
    const DensityReport d0 = density_checks({1.0, 0.0, 0.0, 0.0});
    CHECK(d0.trace_dev == 0.0);
    CHECK(d0.herm_dev == 0.0);
    CHECK(d0.min_eig == 0.0);
    const DensityReport d1 = density_checks({0.6, cplx{0.0, 0.1}, cplx{0.0, -0.1}, 0.4});
    CHECK(d1.trace_dev < 1e-15);
    CHECK(d1.herm_dev == 0.0);
    CHECK(d1.min_eig == doctest::Approx(0.5 - std::sqrt(0.02)).epsilon(1e-14));
    const DensityReport d2 = density_checks({1.1, 0.0, 0.0, -0.1});
    CHECK(d2.trace_dev < 1e-15);
    CHECK(d2.min_eig == doctest::Approx(-0.1));
    const DensityReport d3 = density_checks({0.5, cplx{0.1, 0.0}, cplx{0.2, 0.0}, 0.5});
    CHECK(d3.herm_dev == doctest::Approx(0.1));
  }

  TEST_CASE("states from Bloch vectors") {
    const DensityMatrix r = state_from_bloch(0.0, 1.0, 0.0);
    CHECK(std::abs(r.r01 - cplx{0.0, -0.5}) < 1e-15);
    CHECK(density_checks(r).min_eig == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(density_checks(state_from_bloch(0.3, 0.0, 0.0)).min_eig == doctest::Approx(0.35));
  }
}
