#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>

#include "vlcpos/channel.hpp"
#include "vlcpos/scene.hpp"

namespace vlcpos {

struct IrCacheKey {
    std::uint64_t scene_hash = 0;
    int tx_id = 0;
    std::int64_t x_mm = 0;
    std::int64_t y_mm = 0;
    std::int64_t z_mm = 0;
    int max_bounces = 0;
    double bin_width = 0.0;

    auto operator<=>(const IrCacheKey&) const = default;
};

/// FNV-1a over the canonical scene JSON (receiver x/y excluded) and the
/// integrator options.
std::uint64_t scene_hash(const Scene& scene, const ChannelOptions& options);

IrCacheKey make_cache_key(std::uint64_t scene_hash, int tx_id, const Vec3& rx, int max_bounces,
                          double bin_width);

/// Impulse responses keyed by scene and quantized receiver position.
/// Concurrent lookups, serialized inserts. File format: JSON with a
/// {"format": "vlcpos-ir-cache", "version": 1} header and an entry list.
class IrCache {
public:
    static constexpr int kVersion = 1;

    std::optional<ImpulseResponse> find(const IrCacheKey& key) const;
    void insert(const IrCacheKey& key, ImpulseResponse ir);
    std::size_t size() const;

    /// Missing file loads as empty; wrong format or version throws.
    void load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

private:
    mutable std::shared_mutex mutex_;
    std::map<IrCacheKey, ImpulseResponse> entries_;
};

}  // namespace vlcpos
