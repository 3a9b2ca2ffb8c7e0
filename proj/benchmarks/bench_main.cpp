#include <electron/community.hpp>
#include <electron/io.hpp>
#include <electron/sim.hpp>

#include <benchmark/benchmark.h>

using namespace electron;

namespace {

std::vector<Device> synthetic_devices(std::size_t n)
{
    ScenarioConfig cfg;
    cfg.node_count = n;
    cfg.attacker_fraction = 0.0;
    Engine rng(1);
    auto pop = build_population(cfg, rng);
    return {pop.registry.devices().begin(), pop.registry.devices().end()};
}

void BM_PairwiseSimilarity(benchmark::State& state)
{
    const auto devices = synthetic_devices(200);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& a = devices[i % devices.size()].profile;
        const auto& b = devices[(i * 7 + 3) % devices.size()].profile;
        benchmark::DoNotOptimize(pairwise_similarity(a, b, {}));
        ++i;
    }
}
BENCHMARK(BM_PairwiseSimilarity);

void BM_FormCommunities(benchmark::State& state)
{
    const auto devices = synthetic_devices(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(form_communities(devices, {}, 0.5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FormCommunities)->Arg(100)->Arg(150)->Arg(200)->Complexity();

void BM_Scenario(benchmark::State& state)
{
    ScenarioConfig cfg;
    cfg.node_count = static_cast<std::size_t>(state.range(0));
    cfg.duration = 60.0;
    for (auto _ : state) {
        auto result = run_scenario(cfg);
        benchmark::DoNotOptimize(result.metrics);
    }
    state.SetLabel("60 simulated seconds");
}
BENCHMARK(BM_Scenario)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SampleSubgraph(benchmark::State& state)
{
    Engine rng(2);
    const auto g = small_world_graph(5000, 10, 0.1, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_subgraph(g, 200, rng));
}
BENCHMARK(BM_SampleSubgraph)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
