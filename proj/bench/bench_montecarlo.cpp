#include <benchmark/benchmark.h>

#include "penrisk/allocation.hpp"
#include "penrisk/montecarlo.hpp"

using namespace penrisk;

namespace {

const LifeTable& table() {
    static LifeTable t =
        load_life_table_file(std::string(PENRISK_DATA_DIR) + "/pma92c10_proxy.csv").table;
    return t;
}

SchemeSpec bench_spec() {
    return make_scheme_spec(100, 40.0, 65.0, BenefitStructure::executive_tier(0.05, 5.0));
}

void simulate(benchmark::State& state, ExecutionMode mode) {
    SchemeSpec spec = bench_spec();
    MortalityBasis basis = MortalityBasis::two_point(1.0);
    DiscountBasis discount = make_discount_basis(0.04);
    SimulationConfig config{static_cast<std::uint64_t>(state.range(0)), 1, false, 1024};
    for (auto _ : state) {
        SimulationResult result =
            run_liability_simulation(spec, basis, table(), discount, config, mode);
        benchmark::DoNotOptimize(result.moments.mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_simulate_serial(benchmark::State& state) {
    simulate(state, ExecutionMode::serial);
}

void BM_simulate_parallel(benchmark::State& state) {
    simulate(state, ExecutionMode::parallel);
}

void BM_vco_curve(benchmark::State& state) {
    SchemeSpec spec = make_scheme_spec(1, 40.0, 65.0, BenefitStructure::homogeneous());
    MortalityBasis basis = MortalityBasis::two_point(1.0);
    DiscountBasis discount = make_discount_basis(0.04);
    std::vector<std::int64_t> grid;
    for (std::int64_t n = 1; n <= 10000; ++n) grid.push_back(n);
    for (auto _ : state) {
        auto curve = vco_curve(spec, basis, table(), discount, grid);
        benchmark::DoNotOptimize(curve.back().vco);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

}  // namespace

BENCHMARK(BM_simulate_serial)->Arg(50000)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_simulate_parallel)->Arg(50000)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vco_curve)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
