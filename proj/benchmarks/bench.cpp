#include <benchmark/benchmark.h>

#include "hatlab/block_machine.hpp"
#include "hatlab/bounds.hpp"
#include "hatlab/game.hpp"
#include "hatlab/monte_carlo.hpp"
#include "hatlab/search.hpp"

using namespace hatlab;

static void BM_EvaluatePair3(benchmark::State& state) {
    const FinitePair pair = table_one_pair();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_pair(pair));
}
BENCHMARK(BM_EvaluatePair3);

static void BM_EvaluatePairN(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const FinitePair pair = truncate_to_finite(builtin_machine(Builtin::S2), n);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_pair(pair));
    state.SetComplexityN(n);
}
BENCHMARK(BM_EvaluatePairN)->DenseRange(3, 9, 3);

static void BM_DeltaEvaluate(benchmark::State& state) {
    const FinitePair pair = truncate_to_finite(builtin_machine(Builtin::S2), 6);
    const WinCountVector counts = evaluate_pair(pair);
    int t = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_evaluate(pair, counts, 1, 5, t));
        t = t % 6 + 1;
    }
}
BENCHMARK(BM_DeltaEvaluate);

static void BM_DeriveClosedForm(benchmark::State& state) {
    const MachinePair mp = builtin_machine(Builtin::S1);
    for (auto _ : state) benchmark::DoNotOptimize(derive_closed_form(mp));
}
BENCHMARK(BM_DeriveClosedForm);

static void BM_DeriveClosedFormS4(benchmark::State& state) {
    const MachinePair mp = builtin_machine(Builtin::S4);
    for (auto _ : state) benchmark::DoNotOptimize(derive_closed_form(mp));
}
BENCHMARK(BM_DeriveClosedFormS4);

static void BM_UpperBound(benchmark::State& state) {
    const BigRational p = make_rational(7, 18);
    for (auto _ : state) benchmark::DoNotOptimize(upper_bound(p));
}
BENCHMARK(BM_UpperBound);

static void BM_ExhaustiveSymmetric3(benchmark::State& state) {
    SearchConfig cfg;
    cfg.hats = 3;
    cfg.p = make_rational(1, 2);
    for (auto _ : state) benchmark::DoNotOptimize(exhaustive_symmetric(cfg));
}
BENCHMARK(BM_ExhaustiveSymmetric3);

static void BM_HillClimbRestart6(benchmark::State& state) {
    SearchConfig cfg;
    cfg.hats = 6;
    cfg.p = make_rational(1, 2);
    cfg.mode = SearchMode::HillClimb;
    cfg.restarts = 1;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(hill_climb(cfg));
    }
}
BENCHMARK(BM_HillClimbRestart6);

static void BM_SimulateMachine(benchmark::State& state) {
    const MachinePair mp = builtin_machine(Builtin::S1);
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_machine_pair(mp, 0.5, 10'000, 1, 100));
    state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_SimulateMachine);

BENCHMARK_MAIN();
