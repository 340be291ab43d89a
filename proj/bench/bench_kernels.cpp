// Serial vs OpenMP timings for the hot kernels on the default 200x200 map.

#include "riverside/engine.hpp"
#include "riverside/kernels.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace riverside;

namespace {

const World& world() {
    static const auto w = [] {
        SimConfig c;
        c.terrain = std::string(RIVERSIDE_DATA_DIR) + "/riverbank.map";
        c.elevation = std::string(RIVERSIDE_DATA_DIR) + "/riverbank.elev";
        return World::load(c);
    }();
    return *w;
}

kernels::Exec exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? kernels::Exec::Serial : kernels::Exec::Parallel;
}

void BM_Diffuse(benchmark::State& state) {
    auto field = ExcitementField::from_grid(world().grid, 0.9);
    const auto exec = exec_of(state);
    for (auto _ : state) {
        diffuse_excitement(field, exec);
        benchmark::DoNotOptimize(field.p.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(field.p.size()));
}

void BM_ScoreSites(benchmark::State& state) {
    const auto& w = world();
    Settlement s(w.grid.width, w.grid.height, w.sites.params.r_neighbor);
    Rng rng(1);
    grow_settlement(s, w.features, w.sites, 30, 0.3, 0, rng);
    const auto exec = exec_of(state);
    std::vector<double> scores;
    for (auto _ : state) {
        auto band = top_band(w.features, w.sites, s, exec, &scores);
        benchmark::DoNotOptimize(band.data());
    }
}

void BM_HotspotDistances(benchmark::State& state) {
    const auto exec = exec_of(state);
    for (auto _ : state) {
        auto d = kernels::hotspot_distances(exec, world().grid);
        benchmark::DoNotOptimize(d.data());
    }
}

} // namespace

BENCHMARK(BM_Diffuse)->Arg(0)->Arg(1);
BENCHMARK(BM_ScoreSites)->Arg(0)->Arg(1);
BENCHMARK(BM_HotspotDistances)->Arg(0)->Arg(1);
BENCHMARK_MAIN();
