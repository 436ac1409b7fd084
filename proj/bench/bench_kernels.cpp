#include <benchmark/benchmark.h>

#include <cstddef>

#include "dualcalc/function.hpp"
#include "dualcalc/integration.hpp"
#include "dualcalc/kernels.hpp"
#include "dualcalc/order.hpp"

using namespace dualcalc;

namespace {

// Shared-boundary lattice over [0, 2] x [0, 1] with `cells` cells and `grid`
// points per cell edge.
CellLattice make_lattice(std::size_t cells, std::size_t grid) {
  CellLattice lat;
  lat.cells = cells;
  lat.points = grid;
  lat.stride = grid - 1;
  const std::size_t n = cells * (grid - 1);
  lat.re.resize(n + 1);
  lat.ze.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    lat.re[i] = 2.0 * t;
    lat.ze[i] = t;
  }
  return lat;
}

const DualFunction& integrand() {
  static const DualFunction f = DualFunction::parse("x*sin(x) + exp(x)/(1 + x^2)");
  return f;
}

void BM_CellExtremaSerial(benchmark::State& state) {
  const CellLattice lat = make_lattice(static_cast<std::size_t>(state.range(0)), kDefaultGrid);
  for (auto _ : state) benchmark::DoNotOptimize(cell_extrema_serial(integrand(), lat));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CellExtremaParallel(benchmark::State& state) {
  const CellLattice lat = make_lattice(static_cast<std::size_t>(state.range(0)), kDefaultGrid);
  for (auto _ : state) benchmark::DoNotOptimize(cell_extrema_parallel(integrand(), lat));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = kernel_threads();
}

void BM_Integrate(benchmark::State& state) {
  const TypedInterval I = make_interval(DualReal(0, 0), DualReal(2, 1), OrderKind::Type1);
  IntegrationOptions opt;
  opt.tol = 1e-12;  // never met, so every level is sampled
  opt.max_depth = static_cast<std::size_t>(state.range(0));
  opt.execution = state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(integrand(), I, OrderKind::Type1, opt));
}

}  // namespace

BENCHMARK(BM_CellExtremaSerial)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CellExtremaParallel)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Integrate)->ArgsProduct({{8, 10, 12}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
