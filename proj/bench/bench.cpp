#include <benchmark/benchmark.h>

#include "cat0/fixtures.hpp"
#include "cat0/flat_structure.hpp"
#include "cat0/halfplanes.hpp"
#include "cat0/reports.hpp"

using namespace cat0;

namespace {

struct BallCase {
    Fixture F = tripod_times_r_fixture(20);
    SupportSet S = support(F.X, F.chain);
    DistanceField field{F.X, PointLocation::at_vertex(F.special_vertices[10]), 10.0};
};

const BallCase& ball_case() {
    static const BallCase c;
    return c;
}

void BM_BallAreaParallel(benchmark::State& st) {
    const BallCase& c = ball_case();
    for (auto _ : st) benchmark::DoNotOptimize(ball_area(c.field, c.S, static_cast<double>(st.range(0))));
}

void BM_BallAreaSerial(benchmark::State& st) {
    const BallCase& c = ball_case();
    for (auto _ : st) benchmark::DoNotOptimize(ball_area_serial(c.field, c.S, static_cast<double>(st.range(0))));
}

void BM_DistanceField(benchmark::State& st) {
    const Fixture F = plane_fixture(static_cast<int>(st.range(0)));
    const PointLocation p = F.model_point(0, {0.3, 0.4});
    for (auto _ : st) benchmark::DoNotOptimize(DistanceField(F.X, p).window_count());
}

void BM_GeodesicBatch(benchmark::State& st) {
    const Fixture F = plane_fixture(10);
    RunConfig cfg;
    cfg.samples = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(geodesic_batch_report(F.X, cfg).body.size());
}

void BM_DecomposePlane(benchmark::State& st) {
    const Fixture F = plane_fixture(20);
    const SupportSet S = support(F.X, F.chain);
    const PointLocation p = F.model_point(0, {0.3, 0.4});
    for (auto _ : st) benchmark::DoNotOptimize(decompose(F.X, S, p, 3.0).halfplanes.size());
}

}  // namespace

BENCHMARK(BM_BallAreaParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BallAreaSerial)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceField)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeodesicBatch)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecomposePlane)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
