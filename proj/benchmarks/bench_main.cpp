#include "slicecalc/homology.hpp"
#include "slicecalc/slices.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace slicecalc;

namespace {

IntMat random_matrix(std::mt19937& rng, std::size_t n, int max_abs) {
    std::uniform_int_distribution<int> entry(-max_abs, max_abs);
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = entry(rng);
    return m;
}

void bm_smith_normal_form(benchmark::State& state) {
    std::mt19937 rng(42);
    IntMat a = random_matrix(rng, static_cast<std::size_t>(state.range(0)), 9);
    for (auto _ : state) {
        SmithResult s = smith_normal_form(a);
        benchmark::DoNotOptimize(s.rank);
    }
}
BENCHMARK(bm_smith_normal_form)->Arg(6)->Arg(12)->Arg(24);

void bm_oracle_column(benchmark::State& state) {
    GroupContext c27{3, 3};
    RealRep v = v_recursive(state.range(0), c27);
    for (auto _ : state) {
        NormalizeResult norm = normalize_for_B(v, 0);
        HomologyTable t = bredon_homology(norm.stripped, make_B(1, 0, c27));
        benchmark::DoNotOptimize(t.entries.size());
    }
}
BENCHMARK(bm_oracle_column)->Arg(4)->Arg(13)->Arg(22);

void bm_constant_coefficients(benchmark::State& state) {
    GroupContext c27{3, 3};
    RealRep v = RealRep::zero(c27);
    v.mult[0] = state.range(0);
    for (auto _ : state) {
        HomologyTable t = bredon_homology(v, make_constant_Z(c27));
        benchmark::DoNotOptimize(t.entries.size());
    }
}
BENCHMARK(bm_constant_coefficients)->Arg(2)->Arg(5)->Arg(8);

void bm_mackey_iso(benchmark::State& state) {
    GroupContext c27{3, 3};
    MackeyFunctor a = make_B(2, 1, c27);
    MackeyFunctor b = inflate(1, make_B(2, 0, GroupContext{3, 2}), c27);
    for (auto _ : state) {
        auto iso = mackey_iso(a, b);
        benchmark::DoNotOptimize(iso.isomorphic);
    }
}
BENCHMARK(bm_mackey_iso);

} // namespace

BENCHMARK_MAIN();
