#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "gxtsp/crossover.hpp"
#include "gxtsp/instance.hpp"
#include "gxtsp/local_search.hpp"
#include "gxtsp/rng.hpp"
#include "gxtsp/tour.hpp"

namespace {

using namespace gxtsp;

Instance random_instance(const int n, const std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> coord(0.0, 10000.0);
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        points.push_back({coord(rng), coord(rng)});
    }
    return Instance::from_coords("bench", std::move(points));
}

Tour random_tour(const Instance& inst, Rng& rng) {
    std::vector<int> order(static_cast<std::size_t>(inst.n()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    return Tour(std::move(order), inst);
}

void BM_crossover(benchmark::State& state, const CrossoverOp op) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, 7);
    Rng rng(11);
    const Tour father = random_tour(inst, rng);
    const Tour mother = random_tour(inst, rng);
    for (auto _ : state) {
        Tour child = crossover(op, father, mother, inst, rng);
        benchmark::DoNotOptimize(child.length());
    }
    state.SetComplexityN(n);
}

void BM_two_opt(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, 7);
    Rng rng(13);
    const Tour start = random_tour(inst, rng);
    for (auto _ : state) {
        Tour out = two_opt(start, inst);
        benchmark::DoNotOptimize(out.length());
    }
}

void BM_three_opt(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, 7);
    Rng rng(13);
    // 3-opt from a random tour spends most of its time undoing 2-opt
    // work, so benchmark it on the tour 2-opt already cleaned
    const Tour start = two_opt(random_tour(inst, rng), inst);
    for (auto _ : state) {
        Tour out = three_opt(start, inst);
        benchmark::DoNotOptimize(out.length());
    }
}

void BM_tour_length(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, 7);
    Rng rng(17);
    const Tour t = random_tour(inst, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tour_length(t.order(), inst));
    }
}

BENCHMARK_CAPTURE(BM_crossover, igx, CrossoverOp::igx)
    ->RangeMultiplier(4)
    ->Range(64, 16384)
    ->Unit(benchmark::kMicrosecond)
    ->Complexity(benchmark::oN);
BENCHMARK_CAPTURE(BM_crossover, vgx, CrossoverOp::vgx)
    ->RangeMultiplier(4)
    ->Range(64, 4096)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_crossover, gx_random, CrossoverOp::gx_random)
    ->RangeMultiplier(4)
    ->Range(64, 4096)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_crossover, gx_four_random, CrossoverOp::gx_four_random)
    ->RangeMultiplier(4)
    ->Range(64, 4096)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_crossover, gx_four_best20, CrossoverOp::gx_four_best20)
    ->RangeMultiplier(4)
    ->Range(64, 4096)
    ->Unit(benchmark::kMicrosecond);

BENCHMARK(BM_two_opt)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_three_opt)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tour_length)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
