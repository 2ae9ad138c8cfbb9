#include <benchmark/benchmark.h>

#include <random>

#include "vlcpos/acoofdm.hpp"
#include "vlcpos/channel.hpp"
#include "vlcpos/harness.hpp"
#include "vlcpos/positioning.hpp"
#include "vlcpos/qam.hpp"

using namespace vlcpos;

namespace {

std::vector<cplx> symbols(const OfdmConfig& cfg)
{
    std::mt19937_64 rng(1);
    const Constellation qam(cfg.constellation_size);
    std::vector<std::uint8_t> bits(std::size_t(cfg.data_subcarriers() * qam.bits_per_symbol()));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
    return qam.modulate(bits);
}

void BM_FieldBuild(benchmark::State& state)
{
    const Scene scene = default_scene();
    SceneConfig room = scene.room;
    room.surface_element_size = 0.2;
    room.higher_order_element_size = 0.4;
    for (auto _ : state) {
        ReflectionField field(room, scene.transmitters[0], int(state.range(0)));
        benchmark::DoNotOptimize(field.first_hop_power());
    }
}
BENCHMARK(BM_FieldBuild)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_FieldEvaluate(benchmark::State& state)
{
    const Scene scene = default_scene();
    SceneConfig room = scene.room;
    room.surface_element_size = 0.2;
    room.higher_order_element_size = 0.4;
    const ReflectionField field(room, scene.transmitters[0], 3);
    const auto rx = scene.receiver.at(0.5, 1.5);
    for (auto _ : state) benchmark::DoNotOptimize(field.evaluate(rx));
}
BENCHMARK(BM_FieldEvaluate)->Unit(benchmark::kMicrosecond);

void BM_OfdmTransmit(benchmark::State& state)
{
    OfdmConfig cfg;
    cfg.n_subcarriers = int(state.range(0));
    const auto s = symbols(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(transmit(s, cfg));
}
BENCHMARK(BM_OfdmTransmit)->Arg(64)->Arg(512);

void BM_OfdmReceive(benchmark::State& state)
{
    OfdmConfig cfg;
    cfg.n_subcarriers = int(state.range(0));
    const auto f = transmit(symbols(cfg), cfg);
    const std::vector<cplx> eq(std::size_t(cfg.data_subcarriers()), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(receive(f.clipped, cfg, eq));
}
BENCHMARK(BM_OfdmReceive)->Arg(64)->Arg(512);

void BM_Laterate(benchmark::State& state)
{
    const std::vector<Anchor> a{{1, 2, 2, 1.5}, {2, 2, 4, 2.1}, {3, 4, 2, 1.9}, {4, 4, 4, 2.6}};
    for (auto _ : state) benchmark::DoNotOptimize(laterate(a));
}
BENCHMARK(BM_Laterate);

void BM_LosPoint(benchmark::State& state)
{
    ExperimentConfig cfg;
    cfg.max_bounces = 0;
    const Experiment e(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(e.run_point(1.3, 4.2));
}
BENCHMARK(BM_LosPoint)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
