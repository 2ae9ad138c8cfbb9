// vlcpos: run positioning experiments over a room grid.

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vlcpos/config.hpp"
#include "vlcpos/harness.hpp"
#include "vlcpos/ir_cache.hpp"

namespace {

struct RunArgs {
    std::string config;
    std::string out;
    std::string modulation;
    std::optional<int> bounces;
    std::optional<double> grid_step;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    bool dump_frames = false;
};

int run(const RunArgs& args)
{
    vlcpos::ExperimentConfig cfg;
    try {
        cfg = vlcpos::load_experiment_config(args.config);
        if (!args.modulation.empty()) {
            cfg.modulations.clear();
            if (args.modulation == "both") {
                cfg.modulations = {vlcpos::Modulation::Ofdm, vlcpos::Modulation::Ook};
            } else {
                cfg.modulations = {vlcpos::modulation_from_string(args.modulation)};
            }
        }
        if (args.bounces) cfg.max_bounces = *args.bounces;
        if (args.grid_step) cfg.grid_step = *args.grid_step;
        if (args.seed) cfg.rng_seed = *args.seed;
        if (args.workers) cfg.workers = *args.workers;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "vlcpos: config error: " << e.what() << '\n';
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    std::shared_ptr<vlcpos::IrCache> cache;
    if (cfg.ir_cache) {
        cache = std::make_shared<vlcpos::IrCache>();
        cache->load(*cfg.ir_cache);
    }
    const vlcpos::Experiment experiment(cfg, cache);
    const auto maps = experiment.run_grid();
    if (cache) cache->save(*cfg.ir_cache);
    vlcpos::emit_results(maps, cfg, args.out);
    if (args.dump_frames) vlcpos::dump_frames(experiment, args.out);

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& m : maps) {
        const auto& s = m.summary;
        std::printf("%-4s corner %.4f  edge %.4f  center %.3g  rms_rect %.4f  rms_whole %.4f  flagged %zu/%zu\n",
                    vlcpos::to_string(m.modulation), s.corner_err, s.edge_err, s.center_err, s.rms_rect,
                    s.rms_whole, s.flagged_points, m.records.size());
    }
    std::printf("wrote %s (%.1f s)\n", args.out.c_str(), secs);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Indoor visible light positioning simulator"};
    app.require_subcommand(1);

    RunArgs args;
    auto* cmd = app.add_subcommand("run", "Run a grid experiment and write CSV/JSON results");
    cmd->add_option("--config", args.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out, "Output directory")->required();
    cmd->add_option("--modulation", args.modulation, "ofdm, ook or both")
        ->check(CLI::IsMember({"ofdm", "ook", "both"}));
    cmd->add_option("--bounces", args.bounces, "Reflection order")->check(CLI::Range(0, 3));
    cmd->add_option("--grid-step", args.grid_step, "Grid spacing in metres")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", args.seed, "RNG seed");
    cmd->add_option("--workers", args.workers, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--dump-frames", args.dump_frames, "Also write transmitted frames to <out>/frames");

    CLI11_PARSE(app, argc, argv);

    try {
        return run(args);
    } catch (const std::exception& e) {
        std::cerr << "vlcpos: " << e.what() << '\n';
        return 1;
    }
}
