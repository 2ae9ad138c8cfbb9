#include "vlcpos/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace vlcpos {

using json = nlohmann::ordered_json;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where)
{
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

void read_vec3(const json& j, const char* key, Vec3& out, const std::string& where)
{
    if (!j.contains(key)) return;
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() || !a[2].is_number()) {
        throw ConfigError(where + "." + key + ": expected [x, y, z]");
    }
    out = {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

// Infinite clamp limits are written as null.
json limit_to_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double limit_from_json(const json& j, double infinite)
{
    return j.is_null() ? infinite : j.get<double>();
}

json to_json(const Scene& s)
{
    json room = {{"length", s.room.room_length},
                 {"width", s.room.room_width},
                 {"height", s.room.room_height},
                 {"rho_wall", s.room.rho_wall},
                 {"rho_ceiling", s.room.rho_ceiling},
                 {"rho_floor", s.room.rho_floor},
                 {"surface_element_size", s.room.surface_element_size},
                 {"higher_order_element_size", s.room.higher_order_element_size},
                 {"wavelength_nm", s.room.wavelength_nm}};
    json txs = json::array();
    for (const auto& tx : s.transmitters) {
        txs.push_back({{"id", tx.id},
                       {"position", {tx.position.x, tx.position.y, tx.position.z}},
                       {"lambertian_order", tx.lambertian_order},
                       {"power_high", tx.power_high},
                       {"power_low", tx.power_low},
                       {"elevation_deg", tx.elevation_deg},
                       {"azimuth_deg", tx.azimuth_deg}});
    }
    const auto& rx = s.receiver;
    json receiver = {{"position", {rx.position.x, rx.position.y, rx.position.z}},
                     {"area", rx.area},
                     {"fov_deg", rx.fov_deg},
                     {"refractive_index", rx.refractive_index},
                     {"optical_filter_gain", rx.optical_filter_gain},
                     {"elevation_deg", rx.elevation_deg},
                     {"azimuth_deg", rx.azimuth_deg}};
    json schedule = {{"order", s.schedule.order}, {"frames_per_slot", s.schedule.frames_per_slot}};
    return {{"room", room}, {"transmitters", txs}, {"receiver", receiver}, {"schedule", schedule}};
}

Scene scene_from(const json& j)
{
    only_keys(j, "scene", {"room", "transmitters", "receiver", "schedule"});
    Scene s = default_scene();
    if (j.contains("room")) {
        const auto& r = j.at("room");
        only_keys(r, "scene.room",
                  {"length", "width", "height", "rho_wall", "rho_ceiling", "rho_floor",
                   "surface_element_size", "higher_order_element_size", "wavelength_nm"});
        read(r, "length", s.room.room_length, "scene.room");
        read(r, "width", s.room.room_width, "scene.room");
        read(r, "height", s.room.room_height, "scene.room");
        read(r, "rho_wall", s.room.rho_wall, "scene.room");
        read(r, "rho_ceiling", s.room.rho_ceiling, "scene.room");
        read(r, "rho_floor", s.room.rho_floor, "scene.room");
        read(r, "surface_element_size", s.room.surface_element_size, "scene.room");
        read(r, "higher_order_element_size", s.room.higher_order_element_size, "scene.room");
        read(r, "wavelength_nm", s.room.wavelength_nm, "scene.room");
    }
    if (j.contains("transmitters")) {
        const auto& arr = j.at("transmitters");
        if (!arr.is_array()) throw ConfigError("scene.transmitters: expected an array");
        s.transmitters.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "scene.transmitters[" + std::to_string(i) + "]";
            const auto& t = arr[i];
            only_keys(t, where,
                      {"id", "position", "lambertian_order", "power_high", "power_low",
                       "elevation_deg", "azimuth_deg"});
            TransmitterSpec tx;
            tx.id = static_cast<int>(i) + 1;
            read(t, "id", tx.id, where);
            read_vec3(t, "position", tx.position, where);
            read(t, "lambertian_order", tx.lambertian_order, where);
            read(t, "power_high", tx.power_high, where);
            read(t, "power_low", tx.power_low, where);
            read(t, "elevation_deg", tx.elevation_deg, where);
            read(t, "azimuth_deg", tx.azimuth_deg, where);
            s.transmitters.push_back(tx);
        }
        if (!j.contains("schedule")) {
            s.schedule.order.clear();
            for (const auto& tx : s.transmitters) s.schedule.order.push_back(tx.id);
        }
    }
    if (j.contains("receiver")) {
        const auto& r = j.at("receiver");
        only_keys(r, "scene.receiver",
                  {"position", "area", "fov_deg", "refractive_index", "optical_filter_gain",
                   "elevation_deg", "azimuth_deg"});
        read_vec3(r, "position", s.receiver.position, "scene.receiver");
        read(r, "area", s.receiver.area, "scene.receiver");
        read(r, "fov_deg", s.receiver.fov_deg, "scene.receiver");
        read(r, "refractive_index", s.receiver.refractive_index, "scene.receiver");
        read(r, "optical_filter_gain", s.receiver.optical_filter_gain, "scene.receiver");
        read(r, "elevation_deg", s.receiver.elevation_deg, "scene.receiver");
        read(r, "azimuth_deg", s.receiver.azimuth_deg, "scene.receiver");
    }
    if (j.contains("schedule")) {
        const auto& r = j.at("schedule");
        only_keys(r, "scene.schedule", {"order", "frames_per_slot"});
        read(r, "order", s.schedule.order, "scene.schedule");
        read(r, "frames_per_slot", s.schedule.frames_per_slot, "scene.schedule");
    }
    try {
        s.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("scene: ") + e.what());
    }
    return s;
}

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

std::string scene_to_json(const Scene& scene) { return to_json(scene).dump(2); }

namespace {

// Type mismatches deep inside the tree surface as json exceptions.
template <class F>
auto guarded(F&& f)
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid configuration value: ") + e.what());
    }
}

}  // namespace

Scene scene_from_json(const std::string& text)
{
    return guarded([&] { return scene_from(parse(text)); });
}

std::string experiment_to_json(const ExperimentConfig& cfg)
{
    json j;
    j["scene"] = to_json(cfg.scene);
    j["ofdm"] = {{"n_subcarriers", cfg.ofdm.n_subcarriers},
                 {"cp_length", cfg.ofdm.cp_length},
                 {"constellation_size", cfg.ofdm.constellation_size},
                 {"data_rate", cfg.ofdm.data_rate}};
    j["ook"] = {{"bit_rate", cfg.ook.bit_rate},
                {"power_high", cfg.ook.power_high},
                {"power_low", cfg.ook.power_low},
                {"training_length", cfg.ook.training_length}};
    j["led"] = {{"coefficients", cfg.led.coefficients},
                {"v_min", limit_to_json(cfg.led.v_min)},
                {"v_max", limit_to_json(cfg.led.v_max)},
                {"bias_voltage", cfg.led.bias_voltage},
                {"modulation_depth", cfg.modulation_depth}};
    json mods = json::array();
    for (auto m : cfg.modulations) mods.push_back(to_string(m));
    j["experiment"] = {{"grid_step", cfg.grid_step},
                       {"max_bounces", cfg.max_bounces},
                       {"modulations", mods},
                       {"led_nonlinearity", cfg.led_nonlinearity},
                       {"rng_seed", cfg.rng_seed},
                       {"training_frames", cfg.training_frames},
                       {"noise_stddev", cfg.noise_stddev},
                       {"workers", cfg.workers},
                       {"ir_cache", cfg.ir_cache ? json(cfg.ir_cache->string()) : json(nullptr)}};
    j["channel"] = {{"internal_bin", cfg.channel.internal_bin},
                    {"subdivision_ratio", cfg.channel.subdivision_ratio},
                    {"max_subdivision_depth", cfg.channel.max_subdivision_depth}};
    return j.dump(2);
}

namespace {

ExperimentConfig experiment_from(const json& j, const std::filesystem::path& base_dir)
{
    only_keys(j, "config", {"scene", "ofdm", "ook", "led", "experiment", "channel"});
    ExperimentConfig cfg;
    if (j.contains("scene")) cfg.scene = scene_from(j.at("scene"));

    if (j.contains("ofdm")) {
        const auto& o = j.at("ofdm");
        only_keys(o, "ofdm", {"n_subcarriers", "cp_length", "constellation_size", "data_rate"});
        read(o, "n_subcarriers", cfg.ofdm.n_subcarriers, "ofdm");
        read(o, "cp_length", cfg.ofdm.cp_length, "ofdm");
        read(o, "constellation_size", cfg.ofdm.constellation_size, "ofdm");
        read(o, "data_rate", cfg.ofdm.data_rate, "ofdm");
    }
    if (j.contains("ook")) {
        const auto& o = j.at("ook");
        only_keys(o, "ook", {"bit_rate", "power_high", "power_low", "training_length"});
        read(o, "bit_rate", cfg.ook.bit_rate, "ook");
        read(o, "power_high", cfg.ook.power_high, "ook");
        read(o, "power_low", cfg.ook.power_low, "ook");
        read(o, "training_length", cfg.ook.training_length, "ook");
    }
    if (j.contains("led")) {
        const auto& l = j.at("led");
        only_keys(l, "led", {"model_file", "coefficients", "v_min", "v_max", "bias_voltage", "modulation_depth"});
        if (l.contains("model_file")) {
            if (l.contains("coefficients")) throw ConfigError("led: give either model_file or coefficients, not both");
            try {
                cfg.led = load_led_model(resolve(base_dir, l.at("model_file").get<std::string>()));
            } catch (const std::exception& e) {
                throw ConfigError(std::string("led.model_file: ") + e.what());
            }
        }
        if (l.contains("coefficients")) {
            const auto& c = l.at("coefficients");
            if (!c.is_array() || c.size() != 6) throw ConfigError("led.coefficients: expected 6 numbers");
            for (std::size_t k = 0; k < 6; ++k) cfg.led.coefficients[k] = c[k].get<double>();
        }
        constexpr double inf = std::numeric_limits<double>::infinity();
        if (l.contains("v_min")) cfg.led.v_min = limit_from_json(l.at("v_min"), -inf);
        if (l.contains("v_max")) cfg.led.v_max = limit_from_json(l.at("v_max"), inf);
        read(l, "bias_voltage", cfg.led.bias_voltage, "led");
        read(l, "modulation_depth", cfg.modulation_depth, "led");
    }
    if (j.contains("experiment")) {
        const auto& e = j.at("experiment");
        only_keys(e, "experiment",
                  {"grid_step", "max_bounces", "modulations", "led_nonlinearity", "rng_seed",
                   "training_frames", "noise_stddev", "workers", "ir_cache"});
        read(e, "grid_step", cfg.grid_step, "experiment");
        read(e, "max_bounces", cfg.max_bounces, "experiment");
        read(e, "led_nonlinearity", cfg.led_nonlinearity, "experiment");
        read(e, "rng_seed", cfg.rng_seed, "experiment");
        read(e, "training_frames", cfg.training_frames, "experiment");
        read(e, "noise_stddev", cfg.noise_stddev, "experiment");
        read(e, "workers", cfg.workers, "experiment");
        if (e.contains("modulations")) {
            cfg.modulations.clear();
            std::vector<std::string> names;
            read(e, "modulations", names, "experiment");
            try {
                for (const auto& n : names) cfg.modulations.push_back(modulation_from_string(n));
            } catch (const std::exception& ex) {
                throw ConfigError(std::string("experiment.modulations: ") + ex.what());
            }
        }
        if (e.contains("ir_cache") && !e.at("ir_cache").is_null()) {
            cfg.ir_cache = resolve(base_dir, e.at("ir_cache").get<std::string>());
        }
    }
    if (j.contains("channel")) {
        const auto& c = j.at("channel");
        only_keys(c, "channel", {"internal_bin", "subdivision_ratio", "max_subdivision_depth"});
        read(c, "internal_bin", cfg.channel.internal_bin, "channel");
        read(c, "subdivision_ratio", cfg.channel.subdivision_ratio, "channel");
        read(c, "max_subdivision_depth", cfg.channel.max_subdivision_depth, "channel");
    }
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

}  // namespace

ExperimentConfig experiment_from_json(const std::string& text, const std::filesystem::path& base_dir)
{
    return guarded([&] { return experiment_from(parse(text), base_dir); });
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return experiment_from_json(ss.str(), path.parent_path());
}

}  // namespace vlcpos
