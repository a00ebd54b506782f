#include "gossip/graph.hpp"

#include <benchmark/benchmark.h>

using namespace gossip;

namespace {

void BM_GenerateRandomRegular(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const Graph g = generate(
            GraphSpec::random_regular(static_cast<std::size_t>(state.range(0)), 8, seed++));
        benchmark::DoNotOptimize(g.edge_count());
    }
}
BENCHMARK(BM_GenerateRandomRegular)->Arg(64)->Arg(256)->Arg(1024);

void BM_Diameter(benchmark::State& state) {
    const Graph g = generate(
        GraphSpec::random_regular(static_cast<std::size_t>(state.range(0)), 8, 3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(diameter(g));
    }
}
BENCHMARK(BM_Diameter)->Arg(64)->Arg(256)->Arg(1024);

void BM_LoadProfile(benchmark::State& state) {
    const Graph g =
        generate(GraphSpec::star_chain(8, static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        const LoadProfile profile = load_profile(g);
        benchmark::DoNotOptimize(profile.max_load);
    }
}
BENCHMARK(BM_LoadProfile)->Arg(8)->Arg(32);

}  // namespace
