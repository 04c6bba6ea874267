#include <benchmark/benchmark.h>

#include <cmath>

#include "udmap/correlators.hpp"
#include "udmap/maps.hpp"
#include "udmap/wightman.hpp"

namespace {

const udmap::DetectorParams kParams{};

void BM_Kernel(benchmark::State& state) {
  const auto pair = static_cast<udmap::PairKind>(state.range(0));
  const udmap::WightmanKernel k(pair, 3.0, kParams.epsilon);
  double t = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k(t, 0.37));
    t += 1e-7;
  }
  state.SetLabel(std::string(udmap::to_string(pair)));
}
BENCHMARK(BM_Kernel)->DenseRange(0, 3);

void BM_Integrate(benchmark::State& state) {
  const udmap::WightmanKernel k(udmap::PairKind::AA, 3.0, kParams.epsilon);
  const auto f = [&](double a, double b) { return std::polar(1.0, a - b) * k(a, b); };
  udmap::QuadConfig cfg;
  cfg.rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  cfg.ridge_width = kParams.epsilon;
  long evals = 0;
  for (auto _ : state) {
    const auto r = udmap::integrate_2d(f, udmap::Region::rect(0.0, 1.0, 0.0, 1.0), cfg);
    evals = r.n_evals;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["evals"] = static_cast<double>(evals);
}
BENCHMARK(BM_Integrate)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_CorrelatorSet(benchmark::State& state) {
  const udmap::TrajectoryPlan plan{1.0, 3.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(udmap::correlator_set(plan, kParams, {}).err);
  }
}
BENCHMARK(BM_CorrelatorSet)->Unit(benchmark::kMillisecond);

void BM_HermitianEigs(benchmark::State& state) {
  udmap::CoefficientSet c;
  c.alpha = 0.998;
  c.eta = 0.002;
  c.beta = 0.001;
  c.gamma = 0.999;
  c.kappa = {0.997, 0.004};
  c.lambda = {1e-4, 2e-4};
  const auto b = udmap::reshuffle(udmap::solve_a_map(c, udmap::CoefficientSet::ini()));
  for (auto _ : state) benchmark::DoNotOptimize(udmap::hermitian_eigs(b));
}
BENCHMARK(BM_HermitianEigs);

}  // namespace

BENCHMARK_MAIN();
