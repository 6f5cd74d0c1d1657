#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "slepian/dpss.hpp"
#include "slepian/fft.hpp"
#include "slepian/harness.hpp"
#include "slepian/imaging.hpp"
#include "slepian/moments.hpp"
#include "slepian/random.hpp"

namespace {

slepian::PolarImage random_polar(std::size_t R, std::size_t T) {
  slepian::RandomStream rng(R * 7919 + T);
  std::vector<std::complex<double>> s(R * T);
  for (auto& v : s) v = rng.uniform();
  return slepian::PolarImage(R, T, std::move(s));
}

// Doubling T should roughly double the time (T log T per ring).
void BM_ComputeMoments(benchmark::State& state) {
  const auto basis = slepian::compute_dpss({64, 0.1, 10});
  const auto img = random_polar(128, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(slepian::compute_moments(img, basis, 10, 9));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ComputeMoments)->RangeMultiplier(2)->Range(64, 2048)->Complexity(benchmark::oNLogN);

void BM_Fft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const slepian::FftPlan plan(n);
  std::vector<std::complex<double>> x(n, 1.0);
  for (auto _ : state) {
    plan.forward(x);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_Fft)->Arg(256)->Arg(1000)->Arg(1024)->Arg(4096);

void BM_ComputeDpss(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(slepian::compute_dpss({n, 0.1, 10}));
}
BENCHMARK(BM_ComputeDpss)->Arg(64)->Arg(256)->Arg(1024);

void BM_FeatureVector(benchmark::State& state) {
  const auto basis = slepian::compute_dpss({64, 0.1, 10});
  const auto img = slepian::synthetic_test_image(128);
  for (auto _ : state) benchmark::DoNotOptimize(slepian::feature_vector(img, basis));
}
BENCHMARK(BM_FeatureVector);

}  // namespace

BENCHMARK_MAIN();
