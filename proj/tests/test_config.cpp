#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "vlcpos/config.hpp"

using namespace vlcpos;

namespace {

const std::filesystem::path data_dir = VLCPOS_DATA_DIR;

Scene random_scene(oracle::Gen& gen)
{
    Scene s = default_scene();
    s.room.room_length = gen.uniform(3, 10);
    s.room.room_width = gen.uniform(3, 10);
    s.room.room_height = gen.uniform(2.5, 4);
    s.room.rho_wall = gen.uniform(0, 1);
    s.room.rho_ceiling = gen.uniform(0, 1);
    s.room.rho_floor = gen.uniform(0, 1);
    s.room.surface_element_size = gen.uniform(0.05, 0.3);
    s.room.higher_order_element_size = gen.uniform(0.1, 0.6);
    s.room.wavelength_nm = gen.uniform(380, 780);
    const int n = gen.integer(3, 6);
    s.transmitters.clear();
    s.schedule.order.clear();
    for (int k = 0; k < n; ++k) {
        TransmitterSpec tx;
        tx.id = 10 + 3 * k;
        tx.position = {gen.uniform(0, s.room.room_length), gen.uniform(0, s.room.room_width),
                       gen.uniform(2.0, s.room.room_height)};
        tx.lambertian_order = gen.uniform(1, 5);
        tx.power_low = gen.uniform(0.1, 3);
        tx.power_high = tx.power_low + gen.uniform(0.1, 3);
        s.transmitters.push_back(tx);
        s.schedule.order.insert(s.schedule.order.begin(), tx.id);
    }
    s.receiver.position = {gen.uniform(0, s.room.room_length), gen.uniform(0, s.room.room_width), gen.uniform(0.1, 1.9)};
    s.receiver.area = gen.uniform(1e-6, 1e-3);
    s.receiver.fov_deg = gen.uniform(10, 90);
    s.receiver.refractive_index = gen.uniform(1, 2);
    s.receiver.optical_filter_gain = gen.uniform(0.1, 1);
    s.schedule.frames_per_slot = gen.integer(1, 5);
    return s;
}

}  // namespace

TEST_CASE("shipped default config reproduces the built-in defaults")
{
    const auto cfg = load_experiment_config(data_dir / "default_config.json");
    const ExperimentConfig defaults;
    CHECK(cfg.scene == defaults.scene);
    CHECK(cfg.scene == default_scene());
    CHECK(cfg.ofdm == defaults.ofdm);
    CHECK(cfg.ook == defaults.ook);
    CHECK(cfg.led == defaults.led);
    CHECK(cfg.modulation_depth == defaults.modulation_depth);
    CHECK(cfg.grid_step == defaults.grid_step);
    CHECK(cfg.max_bounces == 3);
    CHECK(cfg.modulations == defaults.modulations);
    CHECK(cfg.led_nonlinearity == defaults.led_nonlinearity);
    CHECK(cfg.rng_seed == defaults.rng_seed);
    CHECK_FALSE(cfg.ir_cache.has_value());
}

TEST_CASE("property: scene round trip is bit exact")
{
    oracle::Gen gen(1);
    for (int i = 0; i < 200; ++i) {
        const Scene s = random_scene(gen);
        REQUIRE_NOTHROW(s.validate());
        const Scene back = scene_from_json(scene_to_json(s));
        REQUIRE(back == s);
        REQUIRE(scene_to_json(back) == scene_to_json(s));
    }
}

TEST_CASE("experiment round trip")
{
    oracle::Gen gen(2);
    ExperimentConfig cfg;
    cfg.scene = random_scene(gen);
    cfg.scene.schedule.frames_per_slot = 3;
    cfg.ofdm.n_subcarriers = 64;
    cfg.ofdm.constellation_size = 16;
    cfg.ook.training_length = 333;
    cfg.led = identity_led(0.1);
    cfg.modulation_depth = 0.123456789;
    cfg.grid_step = 0.37;
    cfg.max_bounces = 2;
    cfg.modulations = {Modulation::Ook};
    cfg.led_nonlinearity = false;
    cfg.rng_seed = 0xfeedfacecafebeefULL;
    cfg.training_frames = 2;
    cfg.noise_stddev = 1e-9;
    cfg.workers = 3;
    cfg.ir_cache = "/tmp/x.json";
    cfg.channel.internal_bin = 0.1e-9;
    const auto back = experiment_from_json(experiment_to_json(cfg));
    CHECK(back.scene == cfg.scene);
    CHECK(back.ofdm == cfg.ofdm);
    CHECK(back.ook == cfg.ook);
    CHECK(back.led == cfg.led);
    CHECK(back.modulation_depth == cfg.modulation_depth);
    CHECK(back.grid_step == cfg.grid_step);
    CHECK(back.max_bounces == cfg.max_bounces);
    CHECK(back.modulations == cfg.modulations);
    CHECK(back.led_nonlinearity == cfg.led_nonlinearity);
    CHECK(back.rng_seed == cfg.rng_seed);
    CHECK(back.training_frames == cfg.training_frames);
    CHECK(back.noise_stddev == cfg.noise_stddev);
    CHECK(back.workers == cfg.workers);
    CHECK(back.ir_cache == cfg.ir_cache);
    CHECK(back.channel.internal_bin == cfg.channel.internal_bin);
    CHECK(experiment_to_json(back) == experiment_to_json(cfg));
}

TEST_CASE("unknown keys are rejected at every level")
{
    const char* bad[] = {
        R"({"scen": {}})",
        R"({"scene": {"rooms": {}}})",
        R"({"scene": {"room": {"lenght": 6}}})",
        R"({"scene": {"transmitters": [{"id": 1, "position": [2,2,3.3], "colour": "red"}]}})",
        R"({"scene": {"receiver": {"tilt": 3}}})",
        R"({"scene": {"schedule": {"slots": 2}}})",
        R"({"ofdm": {"n": 64}})",
        R"({"ook": {"rate": 1}})",
        R"({"led": {"gamma": 1}})",
        R"({"experiment": {"grid_stepp": 0.1}})",
        R"({"channel": {"bins": 1}})",
    };
    for (const char* text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(experiment_from_json(text), ConfigError);
    }
    CHECK_THROWS_WITH_AS(experiment_from_json(R"({"experiment": {"grid_stepp": 0.1}})"),
                         doctest::Contains("grid_stepp"), ConfigError);
    CHECK_THROWS_AS(scene_from_json(R"({"room": {"volume": 1}})"), ConfigError);
}

TEST_CASE("malformed and invalid values are config errors")
{
    const char* bad[] = {
        "{",
        "[]",
        R"({"scene": {"room": {"length": "six"}}})",
        R"({"scene": {"room": {"rho_wall": 1.5}}})",
        R"({"scene": {"transmitters": [{"position": [1, 2]}]}})",
        R"({"scene": {"schedule": {"order": [1, 2, 3]}}})",
        R"({"ofdm": {"n_subcarriers": 100}})",
        R"({"ook": {"power_low": 9}})",
        R"({"led": {"coefficients": [1, 2]}})",
        R"({"led": {"coefficients": [0, 1, 0, 0, 0, "x"]}})",
        R"({"led": {"model_file": "nope.json"}})",
        R"({"experiment": {"grid_step": 0}})",
        R"({"experiment": {"max_bounces": 4}})",
        R"({"experiment": {"modulations": ["ofdm", "qpsk"]}})",
        R"({"experiment": {"modulations": ["ook", "ook"]}})",
        R"({"experiment": {"training_frames": 3}})",
        R"({"channel": {"internal_bin": -1}})",
    };
    for (const char* text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(experiment_from_json(text), ConfigError);
    }
    CHECK_THROWS_AS(load_experiment_config(data_dir / "missing.json"), ConfigError);
}

TEST_CASE("partial configs fill in defaults and resolve relative files")
{
    const auto cfg = experiment_from_json(
        R"({"led": {"model_file": "led_ovspxbcr4.json"}, "experiment": {"grid_step": 0.5, "modulations": []}})",
        data_dir);
    CHECK(cfg.led == default_led());
    CHECK(cfg.grid_step == 0.5);
    CHECK(cfg.modulations.empty());
    CHECK(cfg.scene == default_scene());

    const auto dir = std::filesystem::temp_directory_path() / "vlcpos_cfg_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "c.json") << R"({"experiment": {"ir_cache": "cache.json"}})";
    CHECK(load_experiment_config(dir / "c.json").ir_cache == dir / "cache.json");
    std::filesystem::remove_all(dir);

    // Unbounded clamp limits survive as null.
    ExperimentConfig lin;
    lin.led = identity_led(0.5);
    const auto text = experiment_to_json(lin);
    CHECK(text.find("\"v_min\": null") != std::string::npos);
    CHECK(experiment_from_json(text).led == lin.led);
}
