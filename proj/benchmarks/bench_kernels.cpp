#include <benchmark/benchmark.h>

#include <cmath>

#include "trikin/cases.hpp"
#include "trikin/flux.hpp"
#include "trikin/integrator.hpp"
#include "trikin/moments.hpp"

using namespace trikin;

static void BM_MomentTable(benchmark::State& state) {
  GasState g = primitive(conservative(1.3, 0.7, -0.4, 2.1, 1.4), 1.4);
  for (auto _ : state) {
    MomentTable t = moments(g, 3);
    benchmark::DoNotOptimize(psi_mom(t, 1, 0, 0, +1));
  }
}
BENCHMARK(BM_MomentTable);

static void BM_InterfaceFlux(benchmark::State& state) {
  FluxParams par;
  Vec4 ql = conservative(1.0, 0.5, 0.1, 1.0, 1.4);
  Vec4 qr = conservative(0.8, 0.4, -0.2, 0.9, 1.4);
  Vec4 gx = {0.1, 0.05, -0.02, 0.2};
  Vec4 gy = {-0.03, 0.01, 0.04, -0.1};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        interface_flux(ql, gx, gy, qr, gx, gy, 1e-3, par));
}
BENCHMARK(BM_InterfaceFlux);

static void BM_SmoothFlux(benchmark::State& state) {
  FluxParams par;
  par.mu = 1e-3;
  Vec4 q = conservative(1.0, 0.5, 0.1, 1.0, 1.4);
  Vec4 gx = {0.1, 0.05, -0.02, 0.2};
  Vec4 gy = {-0.03, 0.01, 0.04, -0.1};
  for (auto _ : state)
    benchmark::DoNotOptimize(smooth_flux(q, gx, gy, 1e-3, par));
}
BENCHMARK(BM_SmoothFlux);

// Whole-mesh step on a smooth periodic flow, no cells marked.
static void BM_StepSmooth(benchmark::State& state) {
  CaseDef def = make_case("vortex");
  Solver s(def.mesh(16, 16), def.cfg, def.bcs);
  s.init([&](double x, double y) { return def.init(x, y, 0); });
  double dt = 0.5*s.compute_dt();
  for (auto _ : state)
    if (!s.advance(dt)) state.SkipWithError("step failed");
  state.SetItemsProcessed(state.iterations()*s.mesh.ncells());
}
BENCHMARK(BM_StepSmooth)->Unit(benchmark::kMillisecond);

// Step with an advecting density front keeping a band of cells in the
// subcell finite-volume path.
static void BM_StepHybrid(benchmark::State& state) {
  TriMesh m = rect_mesh(16, 16, 0, 0, 1, 1, true, true);
  SolverConfig cfg;
  BcSet bcs;
  Solver s(m, cfg, bcs);
  s.init([](double x, double y) {
    double r = 1.0 + 0.6*std::tanh((y - 0.5)/0.05);
    return conservative(r, 0.3, 0.2, 1.0, 1.4);
  });
  for (auto _ : state)
    if (s.advance_robust(0.8*s.compute_dt()) <= 0)
      state.SkipWithError("step failed");
  state.SetItemsProcessed(state.iterations()*s.mesh.ncells());
}
BENCHMARK(BM_StepHybrid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
