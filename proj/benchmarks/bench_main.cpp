#include "xitaylor/core_functions.hpp"
#include "xitaylor/p_polynomials.hpp"
#include "xitaylor/pipelines.hpp"
#include "xitaylor/quadrature.hpp"
#include "xitaylor/zeta_oracle.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace xitaylor;

static void BM_EvalL(benchmark::State& state) {
  const Real x(static_cast<double>(state.range(0)) + 0.37);
  for (auto _ : state) benchmark::DoNotOptimize(eval_L(x, LParam{4}));
}
BENCHMARK(BM_EvalL)->Arg(2)->Arg(8)->Arg(20);

static void BM_PEval(benchmark::State& state) {
  const PPolynomial p = p_by_recurrence(static_cast<unsigned>(state.range(0)));
  const Real y = -pi() * Real(2.3) * Real(2.3);
  for (auto _ : state) benchmark::DoNotOptimize(p_eval(p, y));
}
BENCHMARK(BM_PEval)->Arg(2)->Arg(6)->Arg(12);

static void BM_PByBinomial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(p_by_binomial(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_PByBinomial)->Arg(6)->Arg(12)->Arg(24);

static void BM_IntegrateLRoute(benchmark::State& state) {
  const Real tol(std::pow(10.0, -static_cast<double>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_piecewise(IntegrandSpec::L_route(2), tol).value);
}
BENCHMARK(BM_IntegrateLRoute)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_CoefficientRoutes(benchmark::State& state) {
  const Real tol(1e-20);
  for (auto _ : state) {
    switch (state.range(0)) {
      case 0: benchmark::DoNotOptimize(ak_via_theta(3, tol).value); break;
      case 1: benchmark::DoNotOptimize(ak_via_L(3, tol).value); break;
      default: benchmark::DoNotOptimize(ak_via_p(3, 2, tol).value); break;
    }
  }
}
BENCHMARK(BM_CoefficientRoutes)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_XiCritical(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(xi_critical(Real(1.25)).value);
}
BENCHMARK(BM_XiCritical)->Unit(benchmark::kMicrosecond);

static void BM_OracleFit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle_coefficients(4, Real(1e-12)).coefficients.size());
}
BENCHMARK(BM_OracleFit)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
