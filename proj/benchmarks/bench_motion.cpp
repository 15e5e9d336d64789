#include "choreo/editing/engine.hpp"
#include "choreo/editing/style_library.hpp"
#include "choreo/motion/kinematics.hpp"
#include "choreo/motion/temporal.hpp"

#include <benchmark/benchmark.h>

using namespace choreo;

namespace {

const MotionSequence& dance() {
  static const MotionSequence m = StyleLibrary::procedural().reference(Style::Happy);
  return m;
}

void BM_ForwardKinematics(benchmark::State& state) {
  const MotionSequence& m = dance();
  int f = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forwardKinematics(defaultSkeleton(), m.frame(f)));
    f = (f + 1) % m.numFrames();
  }
}
BENCHMARK(BM_ForwardKinematics);

void BM_LowPass(benchmark::State& state) {
  const MotionSequence m = tileToLength(dance(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowPass(m.frames(), kDefaultLowPassStride));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LowPass)->Arg(200)->Arg(1200);

void BM_StyleTransfer(benchmark::State& state) {
  const MotionSequence& m = dance();
  const MotionSequence ref = StyleLibrary::procedural().referenceFor(Style::Angry, m.numFrames());
  for (auto _ : state) {
    benchmark::DoNotOptimize(styleTransfer(m, ref, kDefaultLowPassStride));
  }
}
BENCHMARK(BM_StyleTransfer);

} // namespace
