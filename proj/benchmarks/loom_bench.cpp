#include <loom/kernels.hpp>
#include <loom/pipeline.hpp>
#include <loom/stimuli.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

loom::Field noise(int n) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(0, 1);
  loom::Field f(n, n);
  for (double& v : f.values()) v = d(rng);
  return f;
}

void BM_CorrelateSmall(benchmark::State& state) {
  const auto f = noise(static_cast<int>(state.range(0)));
  const auto k = loom::make_gabor(0.7, 0, 4, 0.3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(loom::correlate(f, k));
}
BENCHMARK(BM_CorrelateSmall)->Arg(128)->Arg(256);

void BM_BlurSeparable(benchmark::State& state) {
  const auto f = noise(static_cast<int>(state.range(0)));
  const auto k = loom::make_gaussian(8, 31);
  for (auto _ : state) benchmark::DoNotOptimize(loom::correlate(f, k));
}
BENCHMARK(BM_BlurSeparable)->Arg(128)->Arg(256);

void BM_BlurDirect(benchmark::State& state) {
  const auto f = noise(static_cast<int>(state.range(0)));
  const auto k = loom::make_gaussian(8, 31);
  for (auto _ : state) benchmark::DoNotOptimize(loom::correlate_direct(f, k));
}
BENCHMARK(BM_BlurDirect)->Arg(128);

void BM_PipelineStep(benchmark::State& state) {
  loom::Scenario s;
  s.kind = loom::ScenarioKind::kLoomingOverStripes;
  s.steps = 40;
  std::vector<loom::Field> frames;
  for (const auto& f : loom::generate(s).frames) frames.push_back(loom::normalize_gray(f));
  loom::Pipeline p(loom::default_params());
  p.prime(frames[0]);
  std::size_t i = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.step(frames[i]));
    i = i + 1 < frames.size() ? i + 1 : 1;
  }
}
BENCHMARK(BM_PipelineStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
