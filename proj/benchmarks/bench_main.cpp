#include <benchmark/benchmark.h>

#include <numbers>

#include "birkhoff/asymptotics.hpp"
#include "birkhoff/linking.hpp"

using namespace birkhoff;

namespace {

std::pair<SphereCurve, SphereCurve> fiber_pair(std::size_t n) {
  const FlowField h = hopf_field();
  return {periodic_orbit(h, SpherePoint(1, 0, 0, 0), n).curve, periodic_orbit(h, SpherePoint(0, 0, 1, 0), n).curve};
}

void BM_GaussSum(benchmark::State& state) {
  const auto [a, b] = fiber_pair(static_cast<std::size_t>(state.range(0)));
  const SpherePoint pole = choose_pole(std::vector<SphereCurve>{a, b});
  const Curve3 pa = stereographic_project(a, pole), pb = stereographic_project(b, pole);
  for (auto _ : state) benchmark::DoNotOptimize(gauss_linking_sum(pa, pb));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GaussSum)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_Crossings(benchmark::State& state) {
  const auto [a, b] = fiber_pair(static_cast<std::size_t>(state.range(0)));
  const SpherePoint pole = choose_pole(std::vector<SphereCurve>{a, b});
  const Curve3 pa = stereographic_project(a, pole), pb = stereographic_project(b, pole);
  for (auto _ : state) benchmark::DoNotOptimize(linking_number_crossings(pa, pb, Vec3(0.1, 0.2, 1.0).normalized(), 1));
}
BENCHMARK(BM_Crossings)->RangeMultiplier(2)->Range(64, 1024);

void BM_Integrate(benchmark::State& state) {
  const FlowField f = seifert_field(2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_orbit(f, SpherePoint(0.8, 0, 0, 0.6), 2 * std::numbers::pi, 1e-3));
  }
}
BENCHMARK(BM_Integrate);

void BM_HelicityPair(benchmark::State& state) {
  const FlowField f = hopf_field();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_helicity(f, 2 * std::numbers::pi, 1, seed++));
}
BENCHMARK(BM_HelicityPair)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
