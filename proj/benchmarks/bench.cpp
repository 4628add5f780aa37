#include <benchmark/benchmark.h>

#include <random>

#include "semproc/equiv.hpp"
#include "semproc/qpmc.hpp"

using namespace semproc;

namespace {

const SemiringPtr trop = Semiring::tropical();
const ProcessEnv empty_env;

WeightMatrix random_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    WeightMatrix m(trop, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rng() % 3 == 0)
                m.at(i, j) = trop->parse_weight(std::to_string(rng() % 16));
    return m;
}

// A chain of synchronised two-way choices; state count grows with n.
TermPtr pipeline(std::size_t n) {
    TermPtr stage = Term::nil();
    for (std::size_t i = 0; i < n; ++i)
        stage = Term::choice({Term::prefix("a", trop->parse_weight("2"), stage),
                              Term::prefix("b", trop->parse_weight("3"), stage)});
    return stage;
}

void BM_MatrixClosure(benchmark::State& state) {
    auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(matrix_closure(m));
}
BENCHMARK(BM_MatrixClosure)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_BuildMlts(benchmark::State& state) {
    auto left = pipeline(static_cast<std::size_t>(state.range(0)));
    auto right = pipeline(static_cast<std::size_t>(state.range(0)));
    auto composed = Term::parallel({"a"}, left, right);
    for (auto _ : state) benchmark::DoNotOptimize(build_mlts(composed, empty_env, trop));
}
BENCHMARK(BM_BuildMlts)->Arg(4)->Arg(6)->Arg(8);

void BM_WeakEval(benchmark::State& state) {
    Mlts m = build_mlts(pipeline(static_cast<std::size_t>(state.range(0))), empty_env, trop);
    for (auto _ : state) benchmark::DoNotOptimize(weak_eval(m));
}
BENCHMARK(BM_WeakEval)->Arg(8)->Arg(12);

void BM_QuantWeakBisim(benchmark::State& state) {
    Mlts P = build_mlts(pipeline(static_cast<std::size_t>(state.range(0))), empty_env, trop);
    Mlts Q = build_mlts(Term::prefix(kTau, trop->parse_weight("0"),
                                     pipeline(static_cast<std::size_t>(state.range(0)))),
                        empty_env, trop);
    for (auto _ : state) benchmark::DoNotOptimize(quant_weak_bisim(P, Q));
}
BENCHMARK(BM_QuantWeakBisim)->Arg(4)->Arg(6);

void BM_PmcTransform(benchmark::State& state) {
    auto P = pipeline(static_cast<std::size_t>(state.range(0)));
    auto ctx = make_pmc_context(P, empty_env, trop, {"a"});
    auto phi = parse_formula("[a]<b>(top + [a] 5)", trop);
    for (auto _ : state) benchmark::DoNotOptimize(pmc_transform(phi, ctx));
}
BENCHMARK(BM_PmcTransform)->Arg(4)->Arg(8);

} // namespace

BENCHMARK_MAIN();
