#include <zlb/attention.hpp>
#include <zlb/continuous.hpp>
#include <zlb/equilibrium.hpp>
#include <zlb/estability.hpp>
#include <zlb/guidance.hpp>
#include <zlb/learning.hpp>

#include <benchmark/benchmark.h>

using namespace zlb;

namespace {

const MarkovShock kBaseline{-0.04, 0.0, 0.85, 0.98};

void BM_SolveCandidate(benchmark::State& state) {
    const ModelParams m;
    for (auto _ : state) {
        for (Regime r : kAllRegimes) benchmark::DoNotOptimize(solve_candidate(Concept::REE, r, m, kBaseline));
    }
}
BENCHMARK(BM_SolveCandidate);

// One region-scan cell: cutoff plus enumeration for four concepts.
void BM_RegionCell(benchmark::State& state) {
    const ModelParams m;
    for (auto _ : state) {
        for (Concept c : {Concept::REE, Concept::RPE, Concept::BRE, Concept::BRRPE}) {
            benchmark::DoNotOptimize(cutoff_components(c, m, kBaseline));
            benchmark::DoNotOptimize(exists(c, m, kBaseline));
        }
    }
}
BENCHMARK(BM_RegionCell);

void BM_AssessAll(benchmark::State& state) {
    const ModelParams m;
    const MarkovShock s{-0.001, 0.0, 0.85, 0.98};
    for (auto _ : state) benchmark::DoNotOptimize(assess_all(Concept::REE, m, s));
}
BENCHMARK(BM_AssessAll);

void BM_Simulate(benchmark::State& state) {
    const ModelParams m;
    const auto kind = state.range(0) == 0 ? BeliefKind::rpe_mean : BeliefKind::msv;
    const auto init = rpe_initial_beliefs(kind, m, kBaseline, GainSpec::constant(1e-5));
    SimOptions opt;
    opt.horizon = 100000;
    opt.record = false;
    for (auto _ : state) benchmark::DoNotOptimize(simulate(m, kBaseline, init, opt).T_len);
    state.SetItemsProcessed(state.iterations() * opt.horizon);
}
BENCHMARK(BM_Simulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ContinuousRpe(benchmark::State& state) {
    const ModelParams m;
    const ContinuousShock cs;
    for (auto _ : state) benchmark::DoNotOptimize(find_rpe_continuous(m, cs));
}
BENCHMARK(BM_ContinuousRpe);

void BM_ImpactScan(benchmark::State& state) {
    ModelParams m;
    m.M = 0.97;
    m.sigma = 0.375;
    for (auto _ : state) benchmark::DoNotOptimize(fg_impact_scan(m, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ImpactScan)->Arg(200)->Arg(5000);

void BM_AttentionSolve(benchmark::State& state) {
    const ModelParams m;
    const MarkovShock s{-0.01, 0.0, 0.9, 1.0};
    const auto attn = AttentionParams::calibrated(m);
    const auto r = static_cast<Regime>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_endogenous_bre(r, m, s, attn));
}
BENCHMARK(BM_AttentionSolve)->Arg(static_cast<int>(Regime::PP))->Arg(static_cast<int>(Regime::ZZ));

}  // namespace

BENCHMARK_MAIN();
