#include "choreo/editing/style_library.hpp"
#include "choreo/exporter/gltf.hpp"
#include "choreo/exporter/render.hpp"

#include <benchmark/benchmark.h>

using namespace choreo;

namespace {

const MotionSequence& dance() {
  static const MotionSequence m = StyleLibrary::procedural().reference(Style::Strutting);
  return m;
}

void BM_ExportGltf(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(exportGltf(dance(), defaultSkeleton()));
  }
}
BENCHMARK(BM_ExportGltf)->Unit(benchmark::kMillisecond);

void BM_RasterizeFrame(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rasterizeFrame(defaultSkeleton(), dance().frame(0)));
  }
}
BENCHMARK(BM_RasterizeFrame);

void BM_RenderFramePng(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(renderFramePng(defaultSkeleton(), dance().frame(0)));
  }
}
BENCHMARK(BM_RenderFramePng);

} // namespace
