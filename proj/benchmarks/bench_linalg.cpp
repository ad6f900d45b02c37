#include <benchmark/benchmark.h>

#include <random>

#include "mackeylab/ff.hpp"

using namespace mackeylab::ff;

namespace {

Mat random_mat(uint64_t seed, Fp f, uint32_t r, uint32_t c) {
    std::mt19937_64 rng(seed);
    Mat m(f, r, c);
    for (auto& v : m.a) v = uint32_t(rng() % f.p);
    return m;
}

void bm_mul(benchmark::State& state, uint32_t p) {
    Fp f = make_field(p);
    uint32_t n = uint32_t(state.range(0));
    Mat a = random_mat(1, f, n, n), b = random_mat(2, f, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
}

void bm_rref(benchmark::State& state, uint32_t p) {
    Fp f = make_field(p);
    uint32_t n = uint32_t(state.range(0));
    Mat a = random_mat(3, f, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(rref(a));
}

}  // namespace

BENCHMARK_CAPTURE(bm_mul, f2, 2u)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(bm_mul, f3, 3u)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(bm_rref, f2, 2u)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(bm_rref, f3, 3u)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
