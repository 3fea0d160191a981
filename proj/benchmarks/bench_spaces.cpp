#include <benchmark/benchmark.h>

#include <vector>

#include "ucwfp/spaces.hpp"

using namespace ucwfp;

namespace {

template <class MakeSpace>
void distance_and_midpoint(benchmark::State& state, MakeSpace make) {
    const SpacePtr space = make();
    std::vector<Point> pts;
    for (std::uint64_t s = 0; s < 64; ++s) pts.push_back(space->sample(s));
    std::size_t i = 0;
    for (auto _ : state) {
        const Point& a = pts[i % pts.size()];
        const Point& b = pts[(i * 7 + 3) % pts.size()];
        benchmark::DoNotOptimize(space->distance(a, b));
        benchmark::DoNotOptimize(space->combine(a, b, 0.3));
        ++i;
    }
}

void BM_Euclidean(benchmark::State& state) {
    distance_and_midpoint(state, [&] { return std::make_shared<EuclideanBall>(state.range(0), 1.0); });
}
BENCHMARK(BM_Euclidean)->Arg(2)->Arg(16)->Arg(128);

void BM_SparseL2(benchmark::State& state) {
    distance_and_midpoint(state, [&] { return std::make_shared<SparseL2Ball>(state.range(0)); });
}
BENCHMARK(BM_SparseL2)->Arg(8)->Arg(64);

void BM_Hyperboloid(benchmark::State& state) {
    distance_and_midpoint(state, [] { return std::make_shared<HyperboloidDisk>(1.0); });
}
BENCHMARK(BM_Hyperboloid);

void BM_StarTree(benchmark::State& state) {
    distance_and_midpoint(state, [&] { return std::make_shared<StarTree>(state.range(0), 1.0); });
}
BENCHMARK(BM_StarTree)->Arg(3)->Arg(32);

} // namespace

BENCHMARK_MAIN();
