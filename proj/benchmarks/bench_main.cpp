#include <benchmark/benchmark.h>

#include "defset/counting.hpp"
#include "defset/defining.hpp"
#include "defset/discrepancy.hpp"
#include "defset/goodform.hpp"
#include "defset/sampling.hpp"

namespace {

using namespace defset;

BinaryMatrix sample_regular(std::size_t k, std::uint64_t seed) {
    return switch_chain_sample(circulant_regular(2 * k, k), ChainConfig::defaults(2 * k, 2 * k, seed));
}

void BM_SdsExact(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const BinaryMatrix m = sample_regular(k, 11);
    for (auto _ : state) benchmark::DoNotOptimize(sds_exact(m).value);
}
BENCHMARK(BM_SdsExact)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_CountExactRegular(benchmark::State& state) {
    const auto k = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(count_exact(regular_margins(static_cast<std::size_t>(2 * k), k)));
}
BENCHMARK(BM_CountExactRegular)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_MaxDiscrepancyExact(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const BinaryMatrix m = sample_regular(k, 5);
    for (auto _ : state) benchmark::DoNotOptimize(max_discrepancy_exact(m).value.scaled);
}
BENCHMARK(BM_MaxDiscrepancyExact)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SwitchChainSteps(benchmark::State& state) {
    SwitchChain chain(circulant_regular(16, 8), 3);
    for (auto _ : state) chain.advance(1000);
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SwitchChainSteps);

void BM_PermutableDigraph(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const BinaryMatrix m = sample_regular(k, 9);
    const PartialMatrix rest = difference(m, sds_exact(m).witness_d);
    for (auto _ : state) benchmark::DoNotOptimize(permutable_to_good_form(rest).has_value());
}
BENCHMARK(BM_PermutableDigraph)->Arg(2)->Arg(4);

} // namespace

BENCHMARK_MAIN();
