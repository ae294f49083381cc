#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "mixdenoise/detect.hpp"
#include "mixdenoise/local_prior.hpp"
#include "mixdenoise/noise.hpp"
#include "mixdenoise/nonlocal_prior.hpp"
#include "mixdenoise/transform.hpp"

using namespace mixdenoise;

namespace {

Image scene(int n) {
    Image img(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            img(r, c) = 128.0 + 60.0 * std::sin(0.07 * r) * std::cos(0.05 * c) + ((r / 16 + c / 16) % 2 ? 30.0 : -30.0);
    return img;
}

Image noisy_scene(int n, double rate, NoiseKind kind) {
    return corrupt(scene(n), {10.0, rate, kind, 1}).noisy;
}

}  // namespace

static void BM_Shrink23(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-40.0, 40.0);
    std::vector<double> v(4096);
    for (auto& x : v) x = d(rng);
    for (auto _ : state) {
        double acc = 0.0;
        for (double x : v) acc += shrink23(x, 0.8);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(v.size()));
}
BENCHMARK(BM_Shrink23);

static void BM_GroupTransform(benchmark::State& state) {
    const GroupTransform t(8, static_cast<int>(state.range(0)));
    std::vector<double> data(t.length());
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> d(0.0, 255.0);
    for (auto& x : data) x = d(rng);
    for (auto _ : state) {
        t.forward(data);
        t.inverse(data);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_GroupTransform)->Arg(16)->Arg(12);

static void BM_MatchBlocks(benchmark::State& state) {
    const Image img = noisy_scene(128, 0.0, NoiseKind::SaltPepper);
    const NonlocalConfig cfg{};
    for (auto _ : state) benchmark::DoNotOptimize(match_blocks(img, {60, 60}, cfg));
}
BENCHMARK(BM_MatchBlocks);

static void BM_SolveW(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Image img = noisy_scene(n, 0.0, NoiseKind::SaltPepper);
    const NonlocalConfig cfg{};
    for (auto _ : state) benchmark::DoNotOptimize(solve_w(img, 5.0, 2.5, cfg));
}
BENCHMARK(BM_SolveW)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_SolveU(benchmark::State& state) {
    const Image img = noisy_scene(static_cast<int>(state.range(0)), 0.0, NoiseKind::SaltPepper);
    for (auto _ : state) benchmark::DoNotOptimize(solve_u(img, 15.0, 2.5));
}
BENCHMARK(BM_SolveU)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Amf(benchmark::State& state) {
    const Image img = noisy_scene(256, static_cast<double>(state.range(0)) / 100.0, NoiseKind::SaltPepper);
    for (auto _ : state) benchmark::DoNotOptimize(amf_detect(img, 39));
}
BENCHMARK(BM_Amf)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_Acwmf(benchmark::State& state) {
    const Image img = noisy_scene(256, 0.2, NoiseKind::RandomValued);
    for (auto _ : state) benchmark::DoNotOptimize(acwmf_detect(img, 1.0));
}
BENCHMARK(BM_Acwmf)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
