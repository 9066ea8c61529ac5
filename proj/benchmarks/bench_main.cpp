#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "godron/analysis.hpp"
#include "godron/forms.hpp"
#include "godron/index.hpp"
#include "godron/locus.hpp"

using namespace godron;

namespace {

void BM_MongeJetOrder4(benchmark::State& state) {
  const SurfaceSpec spec = catalog("perturbed_torus", {{"eps", 0.05}});
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_monge_jet(spec, {0, s, 0.7}, 4));
    s += 1e-6;
  }
}
BENCHMARK(BM_MongeJetOrder4);

void BM_FundamentalQuantities(benchmark::State& state) {
  const SurfaceSpec spec = catalog("radial_sphere", {{"eps", 0.3}});
  const MongeJet mj = eval_monge_jet(spec, {2, 0.1, -0.2}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(fundamental_quantities(mj));
}
BENCHMARK(BM_FundamentalQuantities);

void BM_RealZeroLines(benchmark::State& state) {
  const BinaryForm c(3, {1.0, -0.3, -2.1, 0.4});
  for (auto _ : state) benchmark::DoNotOptimize(real_zero_lines(c));
}
BENCHMARK(BM_RealZeroLines);

void BM_NodeWinding(benchmark::State& state) {
  const SurfaceSpec spec = catalog("pre_ellipnode", {{"I", 1.0}, {"J", 1.0}});
  for (auto _ : state) benchmark::DoNotOptimize(node_winding_index(spec, {0, 0.0, 0.0}, 3, 0.02));
}
BENCHMARK(BM_NodeWinding)->Unit(benchmark::kMillisecond);

void BM_GodronBoundaryWinding(benchmark::State& state) {
  const SurfaceSpec spec = catalog("platonova", {{"rho", 2.0}});
  for (auto _ : state)
    benchmark::DoNotOptimize(godron_boundary_index(spec, {0, 0.0, 0.0}, GodronField::cubic_form, 0.05));
}
BENCHMARK(BM_GodronBoundaryWinding)->Unit(benchmark::kMillisecond);

void BM_TraceParabolic(benchmark::State& state) {
  const SurfaceSpec spec = catalog("perturbed_torus", {{"eps", 0.05}});
  for (auto _ : state) benchmark::DoNotOptimize(trace_parabolic(spec, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TraceParabolic)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_FindNodes(benchmark::State& state) {
  const SurfaceSpec spec = catalog("perturbed_torus", {{"eps", 0.05}});
  for (auto _ : state) benchmark::DoNotOptimize(find_nodes(spec, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FindNodes)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_AnalyzePerturbedTorus(benchmark::State& state) {
  auto spec = std::make_shared<const SurfaceSpec>(catalog("perturbed_torus", {{"eps", 0.05}}));
  AnalysisOptions opts;
  opts.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(spec, "perturbed_torus", opts));
}
BENCHMARK(BM_AnalyzePerturbedTorus)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
