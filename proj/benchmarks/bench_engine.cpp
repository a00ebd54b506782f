#include "gossip/classical.hpp"
#include "gossip/engine.hpp"

#include <benchmark/benchmark.h>

using namespace gossip;

namespace {

RunConfig make_config(Protocol protocol, Model model, std::uint64_t seed) {
    RunConfig config;
    config.protocol = protocol;
    config.model = model;
    config.source = 0;
    config.seed = seed;
    config.max_rounds = 1000000;
    return config;
}

void BM_PushCompleteBuffered(benchmark::State& state) {
    const Graph g = generate(GraphSpec::complete(static_cast<std::size_t>(state.range(0))));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const Trace trace = run(g, make_config(Protocol::Push, Model::Buffered, seed++));
        benchmark::DoNotOptimize(trace.completion_round);
    }
}
BENCHMARK(BM_PushCompleteBuffered)->Arg(64)->Arg(256)->Arg(1024);

void BM_PushCompleteClassical(benchmark::State& state) {
    const Graph g = generate(GraphSpec::complete(static_cast<std::size_t>(state.range(0))));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const Trace trace =
            run_classical(g, make_config(Protocol::Push, Model::Classical, seed++));
        benchmark::DoNotOptimize(trace.completion_round);
    }
}
BENCHMARK(BM_PushCompleteClassical)->Arg(64)->Arg(256)->Arg(1024);

void BM_PullStarBuffered(benchmark::State& state) {
    const Graph g = generate(GraphSpec::star(static_cast<std::size_t>(state.range(0))));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const Trace trace = run(g, make_config(Protocol::Pull, Model::Buffered, seed++));
        benchmark::DoNotOptimize(trace.completion_round);
    }
}
BENCHMARK(BM_PullStarBuffered)->Arg(16)->Arg(64)->Arg(256);

// The queue-heavy worst case: request backlogs dominate the runtime.
void BM_PullStarChainBuffered(benchmark::State& state) {
    const Graph g =
        generate(GraphSpec::star_chain(2, static_cast<std::size_t>(state.range(0))));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const Trace trace = run(g, make_config(Protocol::Pull, Model::Buffered, seed++));
        benchmark::DoNotOptimize(trace.completion_round);
    }
}
BENCHMARK(BM_PullStarChainBuffered)->Arg(8)->Arg(16);

void BM_EngineStepPullRegular(benchmark::State& state) {
    const Graph g = generate(
        GraphSpec::random_regular(static_cast<std::size_t>(state.range(0)), 8, 42));
    BufferedEngine engine(g, make_config(Protocol::Pull, Model::Buffered, 7));
    for (auto _ : state) {
        engine.step();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EngineStepPullRegular)->Arg(256)->Arg(1024);

}  // namespace
