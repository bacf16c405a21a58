#include <benchmark/benchmark.h>

#include "hz/hurwitz.hpp"
#include "hz/scan.hpp"
#include "hz/transfer.hpp"
#include "hz/zeta.hpp"

using namespace hz;

static void BM_MakeGroup(benchmark::State& state) {
    int q = static_cast<int>(state.range(0));
    for (auto _ : state) {
        HeckeGroup G = make_group(q);
        benchmark::DoNotOptimize(G.g.size());
    }
}
BENCHMARK(BM_MakeGroup)->Arg(5)->Arg(12)->Arg(30);

static void BM_HurwitzZeta(benchmark::State& state) {
    Complex s(1.0, 9.5337);
    double a = 0.7;
    for (auto _ : state) {
        Complex v = hurwitz_zeta<double>(s, a);
        benchmark::DoNotOptimize(v);
        a = a < 40 ? a + 0.1 : 0.7;
    }
}
BENCHMARK(BM_HurwitzZeta);

static void BM_BuildOperator(benchmark::State& state) {
    int q = static_cast<int>(state.range(0));
    int N = static_cast<int>(state.range(1));
    HeckeGroup G = make_group(q);
    Charts ch = build_charts(G, N);
    Complex s(0.5, 9.5);
    for (auto _ : state) {
        OperatorMatrix M = build_fast_operator(G, s, Parity::minus, ch);
        benchmark::DoNotOptimize(M.a.data());
    }
}
BENCHMARK(BM_BuildOperator)->Args({3, 40})->Args({5, 40})->Args({5, 80})->Args({7, 56});

static void BM_FredholmDet(benchmark::State& state) {
    HeckeGroup G = make_group(5);
    Charts ch = build_charts(G, static_cast<int>(state.range(0)));
    OperatorMatrix M = build_fast_operator(G, Complex(0.5, 4.0), Parity::minus, ch);
    for (auto _ : state) {
        FredholmDet d = fredholm_det(M);
        benchmark::DoNotOptimize(d.value);
    }
}
BENCHMARK(BM_FredholmDet)->Arg(40)->Arg(80);

static void BM_EnumerateClasses(benchmark::State& state) {
    HeckeGroup G = make_group(3);
    double X = static_cast<double>(state.range(0));
    for (auto _ : state) {
        ClassList cl = enumerate_conj_classes(G, GroupTag::Gamma, X);
        benchmark::DoNotOptimize(cl.classes.size());
    }
}
BENCHMARK(BM_EnumerateClasses)->Arg(1000)->Arg(10000);

static void BM_TracePowerSum(benchmark::State& state) {
    HeckeGroup G = make_group(5);
    TruncationSpec tr;
    tr.exponent_cap = static_cast<int>(state.range(0));
    for (auto _ : state) {
        TraceSum ts = trace_power_sum(G, 2, Complex(2, 0), -1, tr);
        benchmark::DoNotOptimize(ts.value);
    }
}
BENCHMARK(BM_TracePowerSum)->Arg(64)->Arg(256);

static void BM_SelbergZ(benchmark::State& state) {
    HeckeGroup G = make_group(3);
    TruncationSpec tr;
    tr.norm_cutoff = 1e4;
    ClassList cl = enumerate_conj_classes(G, GroupTag::Gamma, tr.norm_cutoff);
    for (auto _ : state) {
        ZetaValue z = selberg_Z(G, Complex(2, 0), tr, &cl);
        benchmark::DoNotOptimize(z.value);
    }
}
BENCHMARK(BM_SelbergZ);

BENCHMARK_MAIN();
