#include <benchmark/benchmark.h>

#include "unicrit/potential.hpp"
#include "unicrit/probes.hpp"
#include "unicrit/rays.hpp"
#include "unicrit/transversality.hpp"

using namespace unicrit;

static void BM_TransversalityTip(benchmark::State& state) {
  const MapParams p(2, {-2, 0});
  for (auto _ : state) {
    auto sum = transversality_sum(p, 1e-12);
    benchmark::DoNotOptimize(sum.value);
  }
}
BENCHMARK(BM_TransversalityTip);

static void BM_Green(benchmark::State& state) {
  const MapParams p(2, {-2, 0});
  for (auto _ : state) {
    double g = green(p, {-2.0001, 0}, 1e-12);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_Green);

static void BM_ParamBottcherJet(benchmark::State& state) {
  for (auto _ : state) {
    Jet phi = param_bottcher(2, {-2.0001, 0}, 1e-12);
    benchmark::DoNotOptimize(phi.der);
  }
}
BENCHMARK(BM_ParamBottcherJet);

static void BM_VerifyIdentity(benchmark::State& state) {
  const MapParams p(2, {-2.3, 0.4});
  for (auto _ : state) {
    auto rep = verify_derivative_identity(p, 1e-12);
    benchmark::DoNotOptimize(rep.rel_err);
  }
}
BENCHMARK(BM_VerifyIdentity);

static void BM_TraceParameterRay(benchmark::State& state) {
  const double t_min = std::exp2(-static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto ray = trace_parameter_ray(2, AngleRational(1, 3), 4.0, t_min, 8);
    benchmark::DoNotOptimize(ray.samples.back().z);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(8 * state.range(0)));
}
BENCHMARK(BM_TraceParameterRay)->Arg(8)->Arg(16)->Arg(24);

static void BM_MembershipGrid(benchmark::State& state) {
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = membership_grid(Plane::parameter, 2, {0, 0},
                             RegionRect{{-0.5, 0}, 1.6, 1.6}, res, res, 256,
                             0.0, 1);
    benchmark::DoNotOptimize(r.cells.data());
  }
  state.SetItemsProcessed(state.iterations() * res * res);
}
BENCHMARK(BM_MembershipGrid)->Arg(128)->Arg(256);

static void BM_ExactEdt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::uint8_t> site(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) site[(i * 37 % n) * n + (i * 61 % n)] = 1;
  for (auto _ : state) {
    auto d = exact_edt(n, n, site);
    benchmark::DoNotOptimize(d.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ExactEdt)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
