#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "udmap/errors.hpp"
#include "udmap/quadrature.hpp"
#include "udmap/wightman.hpp"

using namespace udmap;
using std::numbers::pi;

TEST_SUITE("quadrature") {
  TEST_CASE("constant integrands") {
    const auto one = [](double, double) { return cplx{1.0, 0.0}; };
    const QuadResult sq = integrate_2d(one, Region::rect(0.0, 1.0, 0.0, 1.0));
    CHECK(sq.converged);
    CHECK(std::abs(sq.value - 1.0) < 1e-14);
    const QuadResult tri = integrate_2d(one, Region::lower_triangle(0.0, 1.0));
    CHECK(tri.converged);
    CHECK(std::abs(tri.value - 0.5) < 1e-14);
    CHECK(sq.err_estimate >= 0.0);
  }

  TEST_CASE("oscillatory closed form") {
    const auto f = [](double a, double b) { return std::polar(1.0, a + b); };
    const QuadResult r = integrate_2d(f, Region::rect(0.0, pi, 0.0, pi));
    CHECK(std::abs(r.value - cplx{-4.0, 0.0}) < 1e-10);
    // Triangle closed form: integral_0^pi e^{i a} integral_0^a e^{i b} db da = (e^{2 i pi} - 1)/(2 i^2) ... evaluated directly.
    const auto g = [](double a, double b) { return std::polar(1.0, a - b); };
    const QuadResult t = integrate_2d(g, Region::lower_triangle(0.0, 1.0));
    // integral_0^1 integral_0^a e^{i(a-b)} db da = integral_0^1 (e^{ia} - 1)/i da = (e^{i} - 1)/i^2 - 1/i
    const cplx i{0.0, 1.0};
    const cplx want = (std::exp(i) - 1.0) / (i * i) - 1.0 / i;
    CHECK(std::abs(t.value - want) < 1e-12);
  }

  TEST_CASE("peaked kernel reaches the requested tolerance") {
    const WightmanKernel k(PairKind::II, 1.0, 0.025);
    const auto f = [&](double a, double b) { return std::polar(1.0, a - b) * k(a, b); };
    QuadConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-12;
    cfg.ridge_width = 0.025;
    const QuadResult tight = integrate_2d(f, Region::rect(0.0, 1.0, 0.0, 1.0), cfg);
    CHECK(tight.converged);
    cfg.rel_tol = 1e-6;
    const QuadResult loose = integrate_2d(f, Region::rect(0.0, 1.0, 0.0, 1.0), cfg);
    CHECK(loose.converged);
    CHECK(std::abs(loose.value - tight.value) < 1e-6 * std::abs(tight.value) + 1e-12);
    CHECK(loose.n_evals < tight.n_evals);
  }

  TEST_CASE("additivity over quadrants") {
    const WightmanKernel k(PairKind::AA, 3.0, 0.025);
    const auto f = [&](double a, double b) { return std::polar(1.0, a + 0.5 * b) * k(a, b); };
    QuadConfig cfg;
    cfg.ridge_width = 0.025;
    const QuadResult whole = integrate_2d(f, Region::rect(0.0, 1.0, 0.0, 1.0), cfg);
    cplx sum{};
    double err = whole.err_estimate;
    for (auto [x0, x1] : {std::pair{0.0, 0.4}, std::pair{0.4, 1.0}}) {
      for (auto [y0, y1] : {std::pair{0.0, 0.4}, std::pair{0.4, 1.0}}) {
        const QuadResult q = integrate_2d(f, Region::rect(x0, x1, y0, y1), cfg);
        sum += q.value;
        err += q.err_estimate;
      }
    }
    CHECK(std::abs(sum - whole.value) <= err + 1e-12);
  }

  TEST_CASE("conjugation symmetry is exact") {
    const WightmanKernel k(PairKind::IA, 2.0, 0.025);
    const auto f = [&](double a, double b) { return std::polar(1.0, a - 2.0 * b) * k(a, b); };
    const auto g = [&](double a, double b) { return std::conj(f(a, b)); };
    const Region reg = Region::rect(-1.0, 0.0, 0.0, 1.0);
    const QuadResult rf = integrate_2d(f, reg);
    const QuadResult rg = integrate_2d(g, reg);
    CHECK(std::abs(rg.value - std::conj(rf.value)) <= 1e-12 * std::abs(rf.value));
  }

  TEST_CASE("deterministic") {
    const WightmanKernel k(PairKind::II, 1.0, 0.025);
    const auto f = [&](double a, double b) { return k(a, b); };
    const QuadResult a = integrate_2d(f, Region::lower_triangle(-1.0, 0.0));
    const QuadResult b = integrate_2d(f, Region::lower_triangle(-1.0, 0.0));
    CHECK(a.value == b.value);
    CHECK(a.n_evals == b.n_evals);
  }

  TEST_CASE("budget exhaustion is reported, not hidden") {
    const WightmanKernel k(PairKind::II, 1.0, 1e-4);
    const auto f = [&](double a, double b) { return k(a, b); };
    QuadConfig cfg;
    cfg.rel_tol = 1e-14;
    cfg.abs_tol = 0.0;
    cfg.max_depth = 3;
    const QuadResult r = integrate_2d(f, Region::rect(0.0, 1.0, 0.0, 1.0), cfg);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value.real()));
  }

  TEST_CASE("non-finite samples raise EvaluationError") {
    const auto f = [](double a, double) { return cplx{a > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0, 0.0}; };
    CHECK_THROWS_AS(integrate_2d(f, Region::rect(0.0, 1.0, 0.0, 1.0)), EvaluationError);
  }

  TEST_CASE("region validation") {
    CHECK_THROWS_AS(Region::rect(1.0, 0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(Region::rect(0.0, 0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(Region::lower_triangle(0.0, 0.0), DomainError);
    Region bad{RegionShape::LowerTriangle, 0.0, 1.0, 0.0, 2.0};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    QuadConfig cfg;
    cfg.rel_tol = -1.0;
    const auto one = [](double, double) { return cplx{1.0, 0.0}; };
    CHECK_THROWS_AS(integrate_2d(one, Region::rect(0.0, 1.0, 0.0, 1.0), cfg), DomainError);
  }

  TEST_CASE("midpoint oracle") {
    const auto one = [](double, double) { return cplx{1.0, 0.0}; };
    CHECK(std::abs(riemann_oracle(one, Region::rect(0.0, 1.0, 0.0, 1.0), 10) - 1.0) < 1e-14);
    CHECK(std::abs(riemann_oracle(one, Region::lower_triangle(0.0, 1.0), 1000) - 0.5) < 1e-3);
    const auto f = [](double a, double b) { return std::polar(1.0, a + b); };
    CHECK(std::abs(riemann_oracle(f, Region::rect(0.0, pi, 0.0, pi), 400) - cplx{-4.0, 0.0}) < 1e-4);
    CHECK_THROWS_AS(riemann_oracle(one, Region::rect(0.0, 1.0, 0.0, 1.0), 0), DomainError);
  }

  TEST_CASE("oracle converges at second order") {
    const auto f = [](double a, double b) { return std::polar(1.0, 2.0 * a - b) * std::exp(-a * b); };
    const Region reg = Region::rect(0.0, 1.0, 0.0, 1.0);
    const cplx ref = integrate_2d(f, reg, {1e-13, 1e-15}).value;
    const double e1 = std::abs(riemann_oracle(f, reg, 50) - ref);
    const double e2 = std::abs(riemann_oracle(f, reg, 100) - ref);
    CHECK(e2 < e1);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  }
}
