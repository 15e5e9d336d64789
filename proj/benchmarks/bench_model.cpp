#include "choreo/diffusion/schedule.hpp"
#include "choreo/editing/engine.hpp"
#include "choreo/editing/style_library.hpp"
#include "choreo/model/denoiser.hpp"
#include "choreo/model/trainer.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace choreo;

namespace {

void BM_StandardNormal(benchmark::State& state) {
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(standardNormal(200, kFeatureDim, rng));
  }
  state.SetItemsProcessed(state.iterations() * 200 * kFeatureDim);
}
BENCHMARK(BM_StandardNormal);

// Default shape: H = 128, four dilated blocks.
void BM_DenoiserForward(benchmark::State& state) {
  const DenoiserParams params = DenoiserParams::initialized({}, 1);
  std::mt19937_64 rng(2);
  const RowMatrix noisy = standardNormal(static_cast<int>(state.range(0)), kFeatureDim, rng);
  const Eigen::VectorXd cond = Eigen::VectorXd::Ones(params.shape().condition);
  for (auto _ : state) {
    benchmark::DoNotOptimize(denoiserForward(params, noisy, 50, cond));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DenoiserForward)->Arg(40)->Arg(200)->Arg(460);

// One full generate request: three 10 s variants, T = 100, guided.
void BM_GenerateVariants(benchmark::State& state) {
  const Engine engine(initialModel({}, 3), cosineSchedule(kDefaultDiffusionSteps), StyleLibrary::procedural());
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.generateVariants("happy spin in place", 10.0, seed++));
  }
}
BENCHMARK(BM_GenerateVariants)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_Blend(benchmark::State& state) {
  const Engine engine(initialModel({}, 3), cosineSchedule(kDefaultDiffusionSteps), StyleLibrary::procedural());
  const MotionSequence& a = engine.styles().reference(Style::Happy);
  const MotionSequence& b = engine.styles().reference(Style::Proud);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.blend(a, b, seed++));
  }
}
BENCHMARK(BM_Blend)->Unit(benchmark::kMillisecond)->Iterations(3);

} // namespace
