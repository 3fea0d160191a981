#include <benchmark/benchmark.h>

#include <numbers>

#include "ucwfp/diagnostics.hpp"
#include "ucwfp/iteration.hpp"
#include "ucwfp/spaces.hpp"

using namespace ucwfp;

namespace {

StopRule budget(std::uint64_t rows) {
    StopRule r;
    r.max_rows = rows;
    return r;
}

void BM_RotationRows(benchmark::State& state) {
    auto e = std::make_shared<EuclideanBall>(2, 1.0);
    SOperator op(e, make_rotation(e, std::numbers::pi / 2));
    const Point x = e->make({1, 0});
    for (auto _ : state) {
        const Trajectory t = run(op, x, budget(state.range(0)), MonitorSet{});
        benchmark::DoNotOptimize(t.rows());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RotationRows)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_GoebelKirkRows(benchmark::State& state) {
    auto s = std::make_shared<SparseL2Ball>();
    SOperator op(s, make_goebel_kirk(s));
    for (auto _ : state) {
        const Trajectory t = run(op, SparseL2Ball::unit(1), budget(state.range(0)), MonitorSet{});
        benchmark::DoNotOptimize(t.rows());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GoebelKirkRows)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_MonitorSuite(benchmark::State& state) {
    auto e = std::make_shared<EuclideanBall>(2, 1.0);
    auto rot = make_rotation(e, std::numbers::pi / 2);
    MonitorSet ms;
    ms.fixed_points = rot->known_fixed_points();
    const Trajectory t = run(SOperator(e, rot), e->make({1, 0}), budget(state.range(0)), ms);
    for (auto _ : state) benchmark::DoNotOptimize(check_trajectory(t, ms));
}
BENCHMARK(BM_MonitorSuite)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ExtractPk(benchmark::State& state) {
    auto e = std::make_shared<EuclideanBall>(2, 1.0);
    SOperator op(e, make_rotation(e, std::numbers::pi / 2));
    const Trajectory t = run(op, e->make({1, 0}), budget(state.range(0)), MonitorSet{});
    for (auto _ : state) benchmark::DoNotOptimize(extract_pk(t));
}
BENCHMARK(BM_ExtractPk)->Arg(1000)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
