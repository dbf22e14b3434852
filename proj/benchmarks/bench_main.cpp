#include <benchmark/benchmark.h>

#include "gm/blossom.hpp"
#include "gm/bush.hpp"
#include "gm/enumerate.hpp"
#include "gm/exact.hpp"
#include "gm/generate.hpp"
#include "gm/greedy.hpp"
#include "gm/mrg.hpp"
#include "gm/poly.hpp"
#include "gm/reductions.hpp"
#include "gm/rng.hpp"

namespace {

using namespace gm;

WeightedGraph reductionFixture(int variables, int clauses) {
    Rng rng(404);
    auto f = randomNormalizedFormula(rng, variables, clauses, 2);
    return buildMainReduction(normalize(f), 2).graph;
}

void BM_SolveExactReduction(benchmark::State& state) {
    auto g = reductionFixture(static_cast<int>(state.range(0)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(solveExact(g).optWeight);
}
BENCHMARK(BM_SolveExactReduction)->Arg(2)->Arg(3);

void BM_EnumerateReduction(benchmark::State& state) {
    auto g = reductionFixture(3, 5);
    for (auto _ : state) benchmark::DoNotOptimize(enumerateGreedyMatchings(g, 1u << 22).size());
}
BENCHMARK(BM_EnumerateReduction);

void BM_MaxWeightMatching(benchmark::State& state) {
    Rng rng(405);
    auto g = randomGnp(rng, static_cast<int>(state.range(0)), 60,
                       {Rational(1), Rational(2), Rational(3), Rational(7)});
    for (auto _ : state) benchmark::DoNotOptimize(maxWeightMatching(g).size());
}
BENCHMARK(BM_MaxWeightMatching)->Arg(12)->Arg(24)->Arg(40);

void BM_PolySolver(benchmark::State& state) {
    Rng rng(406);
    auto g = randomPowerOfTwoGraph(rng, 24, 30);
    for (auto _ : state) benchmark::DoNotOptimize(solveLambda0Ge2(g).optWeight);
}
BENCHMARK(BM_PolySolver);

void BM_RgmaExpectation(benchmark::State& state) {
    Rng rng(407);
    auto g = randomBushGraph(rng, static_cast<int>(state.range(0)), 2);
    auto b = validateBush(g);
    for (auto _ : state) benchmark::DoNotOptimize(rgmaExpectedWeightExact(b));
}
BENCHMARK(BM_RgmaExpectation)->Arg(6)->Arg(8)->Arg(10);

void BM_MrgExpectation(benchmark::State& state) {
    Rng rng(408);
    auto g = randomConnectedUnitGraph(rng, static_cast<int>(state.range(0)), 30);
    for (auto _ : state) benchmark::DoNotOptimize(mrgExpectedCardinalityExact(g));
}
BENCHMARK(BM_MrgExpectation)->Arg(6)->Arg(8);

void BM_GreedyRun(benchmark::State& state) {
    Rng rng(409);
    auto g = randomGnp(rng, 64, 30, {Rational(1), Rational(2), Rational(4), Rational(8)});
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(runGreedy(g, TieBreaker::random(), seed++).matching.size());
}
BENCHMARK(BM_GreedyRun);

void BM_BushDecomposeRgma(benchmark::State& state) {
    Rng rng(410);
    auto g = randomConnectedUnitGraph(rng, 48, 15);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto d = bushDecompose(g, PickPolicy::random(), seed++);
        benchmark::DoNotOptimize(rgma(d.bushGraph, seed).size());
    }
}
BENCHMARK(BM_BushDecomposeRgma);

} // namespace

BENCHMARK_MAIN();
