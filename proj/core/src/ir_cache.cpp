#include "vlcpos/ir_cache.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

#include "vlcpos/config.hpp"

namespace vlcpos {

std::uint64_t scene_hash(const Scene& scene, const ChannelOptions& options)
{
    Scene canonical = scene;
    canonical.receiver.position.x = 0.0;
    canonical.receiver.position.y = 0.0;
    nlohmann::ordered_json j = {{"scene", nlohmann::ordered_json::parse(scene_to_json(canonical))},
                                {"internal_bin", options.internal_bin},
                                {"subdivision_ratio", options.subdivision_ratio},
                                {"max_subdivision_depth", options.max_subdivision_depth}};
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

IrCacheKey make_cache_key(std::uint64_t hash, int tx_id, const Vec3& rx, int max_bounces, double bin_width)
{
    return {hash, tx_id, std::llround(rx.x * 1000.0), std::llround(rx.y * 1000.0),
            std::llround(rx.z * 1000.0), max_bounces, bin_width};
}

std::optional<ImpulseResponse> IrCache::find(const IrCacheKey& key) const
{
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void IrCache::insert(const IrCacheKey& key, ImpulseResponse ir)
{
    std::unique_lock lock(mutex_);
    entries_.insert_or_assign(key, std::move(ir));
}

std::size_t IrCache::size() const
{
    std::shared_lock lock(mutex_);
    return entries_.size();
}

namespace {

std::string hex(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

void IrCache::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) return;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed impulse-response cache " + path.string() + ": " + e.what());
    }
    if (j.value("format", "") != "vlcpos-ir-cache" || j.value("version", 0) != kVersion) {
        throw std::runtime_error("unsupported impulse-response cache " + path.string());
    }
    std::unique_lock lock(mutex_);
    for (const auto& e : j.at("entries")) {
        IrCacheKey key;
        key.scene_hash = std::stoull(e.at("scene_hash").get<std::string>(), nullptr, 16);
        key.tx_id = e.at("tx_id").get<int>();
        key.x_mm = e.at("x_mm").get<std::int64_t>();
        key.y_mm = e.at("y_mm").get<std::int64_t>();
        key.z_mm = e.at("z_mm").get<std::int64_t>();
        key.max_bounces = e.at("max_bounces").get<int>();
        key.bin_width = e.at("bin_width").get<double>();
        ImpulseResponse ir;
        ir.bin_width = key.bin_width;
        ir.t0 = e.at("t0").get<double>();
        ir.los_gain = e.at("los_gain").get<double>();
        ir.total_gain = e.at("total_gain").get<double>();
        ir.gains = e.at("gains").get<std::vector<double>>();
        entries_.insert_or_assign(key, std::move(ir));
    }
}

void IrCache::save(const std::filesystem::path& path) const
{
    nlohmann::ordered_json j;
    j["format"] = "vlcpos-ir-cache";
    j["version"] = kVersion;
    j["entries"] = nlohmann::ordered_json::array();
    {
        std::shared_lock lock(mutex_);
        for (const auto& [key, ir] : entries_) {
            j["entries"].push_back({{"scene_hash", hex(key.scene_hash)},
                                    {"tx_id", key.tx_id},
                                    {"x_mm", key.x_mm},
                                    {"y_mm", key.y_mm},
                                    {"z_mm", key.z_mm},
                                    {"max_bounces", key.max_bounces},
                                    {"bin_width", key.bin_width},
                                    {"t0", ir.t0},
                                    {"los_gain", ir.los_gain},
                                    {"total_gain", ir.total_gain},
                                    {"gains", ir.gains}});
        }
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write impulse-response cache " + path.string());
    out << j.dump() << '\n';
}

}  // namespace vlcpos
