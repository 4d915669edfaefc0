#include <benchmark/benchmark.h>

#include "gl2dc/oracle.hpp"
#include "gl2dc/zeta.hpp"

using namespace gl2dc;

static void BM_Classify625(benchmark::State& state) {
    Mat2 g(2, 230, 5, 2, 625);
    for (auto _ : state) benchmark::DoNotOptimize(classify(g, 5, 4));
}
BENCHMARK(BM_Classify625);

static void BM_UnramifiedType625(benchmark::State& state) {
    Mat2 g(2, 230, 5, 2, 625);
    for (auto _ : state) benchmark::DoNotOptimize(unramified_dct(g, 5, 4));
}
BENCHMARK(BM_UnramifiedType625);

static void BM_EnumerateClasses27(benchmark::State& state) {
    for (auto _ : state) {
        long n = 0;
        enumerate_classes(3, 3, [&](const ClassLabel&) { ++n; });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_EnumerateClasses27);

static void BM_OrbitOracle625(benchmark::State& state) {
    Mat2 g = representative(parse_class_label("I+_{1}(32,4) mod 625"));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::orbit_type_cyclic(g));
}
BENCHMARK(BM_OrbitOracle625);

static void BM_Tensor(benchmark::State& state) {
    DCType a = parse_dctype("18 x (48,6) + 6 x (432,9)");
    DCType b = parse_dctype("18 x (6,6) + 18 x (18,6) + 18 x (42,7) + 18 x (126,7)");
    for (auto _ : state) benchmark::DoNotOptimize(tensor(a, b));
}
BENCHMARK(BM_Tensor);

static void BM_CountPoints(benchmark::State& state) {
    CurveQ E = CurveQ::parse("X0(11)").minimal_model();
    for (auto _ : state) benchmark::DoNotOptimize(count_points(E, 100003));
}
BENCHMARK(BM_CountPoints);

static void BM_EulerExpand(benchmark::State& state) {
    DCType t = parse_dctype("3456 x 1");
    for (auto _ : state) benchmark::DoNotOptimize(euler_factor(t, 12));
}
BENCHMARK(BM_EulerExpand);

static void BM_Distribution63(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(distribution(63));
}
BENCHMARK(BM_Distribution63);

static void BM_TatePeriod(benchmark::State& state) {
    CurveQ E = CurveQ::parse("X0(11)").minimal_model();
    for (auto _ : state) benchmark::DoNotOptimize(tate_period(E, 11, 25));
}
BENCHMARK(BM_TatePeriod);

BENCHMARK_MAIN();
