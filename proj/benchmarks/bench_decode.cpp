#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "edss/decoder.hpp"
#include "edss/instgen.hpp"
#include "edss/physics.hpp"
#include "edss/rlga.hpp"

namespace {

edss::Instance make(int tasks) {
    edss::GenSpec spec;
    spec.n_tasks = tasks;
    spec.seed = 1;
    return edss::generate_instance(spec);
}

void BM_Decode(benchmark::State& state) {
    const edss::Instance inst = make(static_cast<int>(state.range(0)));
    edss::Decoder decoder(inst);
    std::vector<int> order(inst.task_count());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(1);
    std::shuffle(order.begin(), order.end(), rng);
    for (auto _ : state) benchmark::DoNotOptimize(decoder.evaluate(order));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decode)->Arg(100)->Arg(300)->Arg(600)->Arg(1400);

void BM_TrimWindow(benchmark::State& state) {
    const edss::Instance inst = make(300);
    for (auto _ : state) {
        for (const edss::TimeWindow& w : inst.windows())
            benchmark::DoNotOptimize(edss::trim_window(inst.task(w.task), w));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(inst.windows().size()));
}
BENCHMARK(BM_TrimWindow);

void BM_Operator(benchmark::State& state) {
    const edss::Instance inst = make(600);
    const edss::SolverConfig cfg;
    edss::Individual parent{std::vector<int>(inst.task_count()), 0};
    std::iota(parent.order.begin(), parent.order.end(), 0);
    edss::Rng rng(3);
    const auto action = edss::Action::from_index(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(edss::apply_operator(parent, action, cfg, inst, rng));
    state.SetLabel(action.name());
}
BENCHMARK(BM_Operator)->DenseRange(0, edss::kActionCount - 1);

void BM_AntennaGain(benchmark::State& state) {
    const edss::physics::GainParams p;
    double theta = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(edss::physics::antenna_gain(theta, p));
        theta = theta > 10.0 ? 0.0 : theta + 0.01;
    }
}
BENCHMARK(BM_AntennaGain);

void BM_RlgaRun(benchmark::State& state) {
    const edss::Instance inst = make(300);
    edss::SolverConfig cfg;
    cfg.mfe = 1000;
    for (auto _ : state) benchmark::DoNotOptimize(edss::run_rlga(inst, cfg));
}
BENCHMARK(BM_RlgaRun)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
