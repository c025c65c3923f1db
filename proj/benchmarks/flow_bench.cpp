// Microbenchmarks for the hot paths: pyramid construction, the three flow
// algorithms, contour rasterization, and phantom synthesis.

#include <benchmark/benchmark.h>

#include "veintrack/fb.hpp"
#include "veintrack/hs.hpp"
#include "veintrack/lk.hpp"
#include "veintrack/phantom.hpp"
#include "veintrack/tracker.hpp"

namespace {

using namespace veintrack;

PhantomConfig bench_config(int size, int frames) {
    PhantomConfig cfg;
    cfg.width = size;
    cfg.height = size;
    cfg.frame_count = frames;
    cfg.center_x = size / 2.0;
    cfg.center_y = size / 2.0;
    cfg.semi_axis_a = size * 0.16;
    cfg.semi_axis_b = size * 0.11;
    cfg.seed = 17;
    return cfg;
}

void BM_BuildPyramid(benchmark::State& state) {
    const PhantomConfig cfg = bench_config(static_cast<int>(state.range(0)), 2);
    const Frame frame = phantom_frame(cfg, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_pyramid(frame, 3));
    }
}
BENCHMARK(BM_BuildPyramid)->Arg(128)->Arg(256);

void BM_PhantomFrame(benchmark::State& state) {
    const PhantomConfig cfg = bench_config(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(phantom_frame(cfg, 1));
    }
}
BENCHMARK(BM_PhantomFrame)->Arg(256);

void BM_LKAdvance32(benchmark::State& state) {
    const PhantomConfig cfg = bench_config(static_cast<int>(state.range(0)), 2);
    const Frame f0 = phantom_frame(cfg, 0);
    const Frame f1 = phantom_frame(cfg, 1);
    const Contour init = truth_contour(cfg, 0);
    const TrackerConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(advance(init, f0, f1, config));
    }
}
BENCHMARK(BM_LKAdvance32)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_HSFlow(benchmark::State& state) {
    const PhantomConfig cfg = bench_config(static_cast<int>(state.range(0)), 2);
    const Frame f0 = phantom_frame(cfg, 0);
    const Frame f1 = phantom_frame(cfg, 1);
    HSParams params;
    params.iterations = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hs_flow(f0, f1, params));
    }
}
BENCHMARK(BM_HSFlow)->Args({128, 50})->Args({128, 250})->Unit(benchmark::kMillisecond);

void BM_FBFlow(benchmark::State& state) {
    const PhantomConfig cfg = bench_config(static_cast<int>(state.range(0)), 2);
    const Frame f0 = phantom_frame(cfg, 0);
    const Frame f1 = phantom_frame(cfg, 1);
    const FBParams params;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fb_flow(f0, f1, params));
    }
}
BENCHMARK(BM_FBFlow)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ContourToMask(benchmark::State& state) {
    const Contour c = ellipse_contour(128, 128, 40, 28, 32, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(contour_to_mask(c, 256, 256));
    }
}
BENCHMARK(BM_ContourToMask);

void BM_Dice(benchmark::State& state) {
    const PhantomConfig cfg = bench_config(256, 2);
    const Mask a = truth_mask(cfg, 0);
    const Mask b = truth_mask(cfg, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dice(a, b));
    }
}
BENCHMARK(BM_Dice);

}  // namespace

BENCHMARK_MAIN();
