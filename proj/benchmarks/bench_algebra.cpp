#include <benchmark/benchmark.h>

#include <string>

#include "mackeylab/comack.hpp"
#include "mackeylab/fdalg.hpp"
#include "mackeylab/group.hpp"
#include "mackeylab/kgmod.hpp"
#include "mackeylab/mackey.hpp"

using namespace mackeylab;

namespace {

void bm_yoshida_build(benchmark::State& state, const char* desc, uint32_t p) {
    auto g = groups::parse_group(desc);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            comack::build_yoshida(g, p, comack::FamilyMode::class_reps));
}

void bm_mackey_build(benchmark::State& state, const char* desc, uint32_t p) {
    auto g = groups::parse_group(desc);
    for (auto _ : state) benchmark::DoNotOptimize(mackey::build_mackey(g, p));
}

void bm_fqk_resolution(benchmark::State& state, const char* desc, uint32_t p) {
    auto c = comack::build_yoshida(groups::parse_group(desc), p,
                                   comack::FamilyMode::class_reps);
    auto f = comack::fq(c, kgmod::trivial_module(c->g, c->f));
    const auto& h = comack::homology(c);
    for (auto _ : state)
        benchmark::DoNotOptimize(fdalg::minimal_resolution(h, f.mod, 8, 0xB0C));
}

void bm_gorenstein(benchmark::State& state, const char* desc, uint32_t p) {
    auto g = groups::parse_group(desc);
    for (auto _ : state)
        benchmark::DoNotOptimize(comack::gorenstein_probe(g, p, 8, 0xB0C));
}

}  // namespace

BENCHMARK_CAPTURE(bm_yoshida_build, c4, "cyclic:4", 2u)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_yoshida_build, klein, "prod(cyclic:2,cyclic:2)", 2u)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_yoshida_build, q8, "q8", 2u)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_yoshida_build, c2cube, "prod(prod(cyclic:2,cyclic:2),cyclic:2)", 2u)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_CAPTURE(bm_mackey_build, c4, "cyclic:4", 2u)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_mackey_build, c2sq, "prod(cyclic:2,cyclic:2)", 2u)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_CAPTURE(bm_fqk_resolution, c4, "cyclic:4", 2u)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_fqk_resolution, d8, "dihedral:8", 2u)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_fqk_resolution, c3sq, "prod(cyclic:3,cyclic:3)", 3u)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_CAPTURE(bm_gorenstein, d8, "dihedral:8", 2u)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_gorenstein, q8, "q8", 2u)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
