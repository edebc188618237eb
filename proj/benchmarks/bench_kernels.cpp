#include <benchmark/benchmark.h>

#include <complex>

#include "gaugeprop/fresnel.hpp"
#include "gaugeprop/gauge.hpp"
#include "gaugeprop/special.hpp"
#include "gaugeprop/trotter.hpp"

namespace gaugeprop {
namespace {

WaveState packet(std::size_t n) {
  return WaveState::sample(-16.0, 16.0, n, [](double x) { return gaussian_packet(x, 1.0, 0.0, 0.5); });
}

void BM_FreeStepSpectral(benchmark::State& state) {
  const WaveState f = packet(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trotter::free_step(f, 0.01, trotter::Backend::Spectral));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FreeStepSpectral)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_FreeStepQuadrature(benchmark::State& state) {
  const WaveState f = packet(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trotter::free_step(f, 0.01, trotter::Backend::Quadrature));
}
BENCHMARK(BM_FreeStepQuadrature)->RangeMultiplier(2)->Range(128, 1024);

void BM_TrotterPropagateHarmonic(benchmark::State& state) {
  const WaveState f = packet(1024);
  trotter::PropagatorConfig cfg;
  cfg.slices = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trotter::trotter_propagate(f, PotentialSpec::harmonic(), 1.0, cfg));
  }
}
BENCHMARK(BM_TrotterPropagateHarmonic)->RangeMultiplier(4)->Range(16, 1024);

void BM_IntegrateFresnel(benchmark::State& state) {
  gauge::IntegrationOptions opts;
  opts.tail = gauge::OscillatoryTail{0.0, 0.5, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauge::integrate_1d([](double x) { return std::polar(1.0, 0.5 * x * x); },
                                                 Interval::real_line(), opts));
  }
}
BENCHMARK(BM_IntegrateFresnel);

void BM_CousinDivision(benchmark::State& state) {
  const gauge::Gauge1D g = gauge::Gauge1D::constant(1.0 / static_cast<double>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(gauge::cousin_division(g, Interval::real_line()));
}
BENCHMARK(BM_CousinDivision)->RangeMultiplier(8)->Range(8, 4096);

void BM_TransitionProbability(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const fresnel::Cylinder c{fresnel::TimeGrid::uniform(1.0, n),
                            std::vector<Interval>(static_cast<std::size_t>(n - 1), Interval::real_line())};
  for (auto _ : state) benchmark::DoNotOptimize(fresnel::transition_probability(c, fresnel::Endpoints{}));
}
BENCHMARK(BM_TransitionProbability)->Arg(1)->Arg(2);

void BM_Erf(benchmark::State& state) {
  const Complex z(1.7, -2.3);
  for (auto _ : state) benchmark::DoNotOptimize(special::erf(z));
}
BENCHMARK(BM_Erf);

}  // namespace
}  // namespace gaugeprop

BENCHMARK_MAIN();
