#include <benchmark/benchmark.h>

#include <random>

#include "tripoly/funcspace.hpp"
#include "tripoly/trimonoid.hpp"

using namespace tripoly;

static void BM_RingMulTable(benchmark::State& state) {
    auto R = Ring::make("Z4");
    int acc = 1;
    for (auto _ : state) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) acc ^= R->mul(a, b);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_RingMulTable);

static void BM_RingMulExtension(benchmark::State& state) {
    // large enough to skip the memoized tables
    auto R = Ring::make("F2^9:t^9+t+1");
    int acc = 1;
    for (auto _ : state) {
        acc = R->mul(acc, 3) ^ 1;
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_RingMulExtension);

static void BM_PolySubstitute(benchmark::State& state) {
    auto R = Ring::make("Z4");
    std::mt19937_64 rng(1);
    auto f = random_poly_of_degree(R, 2, 3, rng);
    auto g1 = random_poly_of_degree(R, 2, 3, rng);
    auto g2 = random_poly_of_degree(R, 2, 3, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.substitute({g1, g2}));
    }
}
BENCHMARK(BM_PolySubstitute);

static void BM_FuncOf(benchmark::State& state) {
    auto R = Ring::make("Z4");
    std::mt19937_64 rng(2);
    auto f = random_poly_of_degree(R, 2, 4, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.func_of());
    }
}
BENCHMARK(BM_FuncOf);

static void BM_EnumeratePolyFunctions(benchmark::State& state) {
    auto R = Ring::make("Z4");
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_poly_functions(R, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_EnumeratePolyFunctions)->Arg(1)->Arg(2);

static void BM_TriCompose(benchmark::State& state) {
    auto R = Ring::make("Z4");
    std::mt19937_64 rng(3);
    auto a = random_mt_element(R, 3, 3, rng);
    auto b = random_mt_element(R, 3, 3, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a.compose(b));
    }
}
BENCHMARK(BM_TriCompose);

static void BM_TriInverse(benchmark::State& state) {
    auto R = Ring::make("Z4");
    std::mt19937_64 rng(4);
    auto t = random_tr_element(R, 3, 3, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(t.inverse());
    }
}
BENCHMARK(BM_TriInverse);

static void BM_InducedGroupMaterialize(benchmark::State& state) {
    auto R = Ring::make("F3");
    for (auto _ : state) {
        benchmark::DoNotOptimize(induced_group_mt(R, 2));
    }
}
BENCHMARK(BM_InducedGroupMaterialize);

static void BM_GroupClosureCheck(benchmark::State& state) {
    auto g = induced_group_mt(Ring::make("F3"), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.perms.closed_under_composition(1));
    }
}
BENCHMARK(BM_GroupClosureCheck);
BENCHMARK_MAIN();
