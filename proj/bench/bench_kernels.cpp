// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "fractalc/boxcount.hpp"
#include "fractalc/geometry.hpp"
#include "fractalc/reference.hpp"

using namespace fractalc;

namespace {

const geometry::Schedule& koch() {
    static const auto s = geometry::build_schedule("K[pi/3]");
    return s;
}

const geometry::Schedule& fig6() {
    static const auto s = geometry::build_schedule("C[1/2,1/4,1/6] K[pi/4] K[pi/3]");
    return s;
}

void BM_IterateParallel(benchmark::State& st) {
    const auto k = static_cast<unsigned>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(geometry::iterate(koch(), k));
}

void BM_IterateSerial(benchmark::State& st) {
    const auto k = static_cast<unsigned>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(reference::iterate_serial(koch(), k));
}

void BM_BoxCountParallel(benchmark::State& st) {
    const auto segs = geometry::iterate(koch(), 8);
    for (auto _ : st)
        benchmark::DoNotOptimize(boxcount::estimate_dimension(segs, 10, 1.0 / 2187));
}

void BM_BoxCountSerial(benchmark::State& st) {
    const auto segs = geometry::iterate(koch(), 8);
    const auto scales = boxcount::scale_ladder(segs, 10, 1.0 / 2187);
    for (auto _ : st)
        benchmark::DoNotOptimize(reference::box_counts_serial(segs.segments, scales));
}

void BM_OverlapGrid(benchmark::State& st) {
    const auto segs = geometry::iterate(fig6(), static_cast<unsigned>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(geometry::detect_overlap(segs));
}

void BM_OverlapBrute(benchmark::State& st) {
    const auto segs = geometry::iterate(fig6(), static_cast<unsigned>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(reference::detect_overlap_brute(segs));
}

}  // namespace

BENCHMARK(BM_IterateParallel)->Arg(6)->Arg(8)->Arg(10);
BENCHMARK(BM_IterateSerial)->Arg(6)->Arg(8)->Arg(10);
BENCHMARK(BM_BoxCountParallel);
BENCHMARK(BM_BoxCountSerial);
BENCHMARK(BM_OverlapGrid)->Arg(1)->Arg(2);
BENCHMARK(BM_OverlapBrute)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
