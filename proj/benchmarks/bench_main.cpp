#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "wlp/bridge.hpp"
#include "wlp/geometry.hpp"
#include "wlp/hull.hpp"
#include "wlp/region.hpp"
#include "wlp/rng.hpp"

namespace {

void bm_normal_stream(benchmark::State& state) {
    wlp::NormalStream ns({42, 0});
    double acc = 0.0;
    for (auto _ : state) acc += ns.next();
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(bm_normal_stream);

void bm_sample_bridge(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t stream = 0;
    for (auto _ : state) {
        wlp::UnitLoop loop = wlp::sample_bridge(n, {42, stream++});
        benchmark::DoNotOptimize(loop.points.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(bm_sample_bridge)->Arg(1000)->Arg(100000);

void bm_convex_hull(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t stream = 0;
    for (auto _ : state) {
        state.PauseTiming();
        wlp::UnitLoop loop = wlp::sample_bridge(n, {42, stream++});
        state.ResumeTiming();
        wlp::ConvexHull h = wlp::convex_hull(loop);
        benchmark::DoNotOptimize(h.vertices.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(bm_convex_hull)->Arg(1000)->Arg(100000);

std::vector<wlp::ConvexHull> bench_hulls(std::size_t count, std::uint64_t n) {
    std::vector<wlp::ConvexHull> hulls;
    hulls.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        hulls.push_back(wlp::convex_hull(wlp::sample_bridge(n, {42, i})));
    return hulls;
}

void bm_hull_weight_flat(benchmark::State& state) {
    static const auto hulls = bench_hulls(64, 10000);
    wlp::PistonGeometry g = wlp::PistonGeometry::flat_head(0.05, 1.0);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wlp::hull_weight(hulls[i], g));
        i = (i + 1) % hulls.size();
    }
}
BENCHMARK(bm_hull_weight_flat);

void bm_hull_weight_capped(benchmark::State& state) {
    static const auto hulls = bench_hulls(64, 10000);
    wlp::PistonGeometry g = wlp::PistonGeometry::capped(0.05, 1.0, 1.0);
    const bool adaptive = state.range(0) == 0;
    wlp::QuadPolicy quad = adaptive ? wlp::QuadPolicy::adaptive() : wlp::QuadPolicy::fixed(128);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wlp::hull_weight(hulls[i], g, quad));
        i = (i + 1) % hulls.size();
    }
    state.SetLabel(adaptive ? "adaptive" : "fixed:128");
}
BENCHMARK(bm_hull_weight_capped)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
