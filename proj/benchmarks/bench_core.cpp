// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "fks/fisher.hpp"
#include "fks/frac_laplacian.hpp"
#include "fks/meanfield.hpp"
#include "fks/particles.hpp"
#include "fks/stable_noise.hpp"
#include "fks/wasserstein.hpp"

using namespace fks;

namespace {

std::vector<Vec2> gaussian_cloud(std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<Vec2> x(n);
  for (auto& p : x) {
    const auto [g1, g2] = rng.normal_pair();
    p = {g1, g2};
  }
  return x;
}

void BM_Drift(benchmark::State& st) {
  const auto x = gaussian_cloud(static_cast<std::size_t>(st.range(0)), 1);
  const KernelParams k{1.3, 0.1, 0.0};
  for (auto _ : st) benchmark::DoNotOptimize(drift(x, k));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Drift)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_StableSample(benchmark::State& st) {
  RngStream rng(3, 0);
  const StableParams p{static_cast<double>(st.range(0)) / 10.0, 0.01};
  for (auto _ : st) benchmark::DoNotOptimize(sample_isotropic_stable(p, rng));
}
BENCHMARK(BM_StableSample)->Arg(12)->Arg(18)->Arg(20);

void BM_ApplyPv(benchmark::State& st) {
  const Vec2 x{0.6, 0.8};
  auto f = [](const Vec2& y) { return std::sqrt(1.0 + norm2(y)); };
  auto g = [](const Vec2& y) { return (1.0 / std::sqrt(1.0 + norm2(y))) * y; };
  auto q = PvQuadratureParams::defaults_for(x);
  q.growth_exponent = 1.0;
  for (auto _ : st) benchmark::DoNotOptimize(apply_pv(f, g, x, 1.5, q));
}
BENCHMARK(BM_ApplyPv)->Unit(benchmark::kMillisecond);

void BM_PdeStep(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  const SpectralStepper stepper(m, 20.0, {1.3, 0.1, 0.0}, 1.8, 0.01);
  auto rho = GridDensity::from_pdf([](const Vec2& x) { return std::exp(-0.5 * norm2(x)); }, m, 20.0);
  for (auto _ : st) benchmark::DoNotOptimize(stepper.step(rho));
}
BENCHMARK(BM_PdeStep)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Fisher(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  const auto rho = FisherGridDensity::from_pdf([](const Vec2& x) { return std::exp(-0.5 * norm2(x)); }, m, 12.0);
  for (auto _ : st) benchmark::DoNotOptimize(fisher_breakdown(rho, 1.5));
}
BENCHMARK(BM_Fisher)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ExactW1(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = WeightedPointSet::uniform(gaussian_cloud(n, 1));
  const auto b = WeightedPointSet::uniform(gaussian_cloud(n, 2));
  for (auto _ : st) benchmark::DoNotOptimize(wasserstein1_exact(a, b));
}
BENCHMARK(BM_ExactW1)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SlicedW1(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = WeightedPointSet::uniform(gaussian_cloud(n, 1));
  const auto b = WeightedPointSet::uniform(gaussian_cloud(n, 2));
  for (auto _ : st) benchmark::DoNotOptimize(sliced_wasserstein1(a, b, 64, 5));
}
BENCHMARK(BM_SlicedW1)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
