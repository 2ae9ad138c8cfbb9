#include "vlcpos/scene.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace vlcpos {

namespace {

void require(bool cond, const std::string& what)
{
    if (!cond) throw std::invalid_argument(what);
}

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void SceneConfig::validate() const
{
    require(room_length > 0.0 && room_width > 0.0 && room_height > 0.0,
            "room dimensions must be positive");
    require(in_unit_interval(rho_wall) && in_unit_interval(rho_ceiling) &&
                in_unit_interval(rho_floor),
            "reflectivities must lie in [0, 1]");
    require(surface_element_size > 0.0 && higher_order_element_size > 0.0,
            "surface element sizes must be positive");
    const double smallest = std::min({room_length, room_width, room_height});
    require(surface_element_size <= smallest && higher_order_element_size <= smallest,
            "surface element pitch larger than room dimension");
}

void TransmitterSpec::validate() const
{
    require(lambertian_order >= 1.0, "lambertian order must be >= 1");
    require(power_high > power_low && power_low > 0.0,
            "transmitter powers must satisfy power_high > power_low > 0");
    require(elevation_deg == -90.0 && azimuth_deg == 0.0,
            "transmitters must point straight down (elevation -90, azimuth 0)");
}

void ReceiverSpec::validate() const
{
    require(area > 0.0, "receiver area must be positive");
    require(fov_deg > 0.0 && fov_deg <= 90.0, "receiver fov must lie in (0, 90] degrees");
    require(refractive_index >= 1.0, "refractive index must be >= 1");
    require(optical_filter_gain > 0.0, "optical filter gain must be positive");
    require(elevation_deg == 90.0 && azimuth_deg == 0.0,
            "receiver must point straight up (elevation 90, azimuth 0)");
}

ReceiverSpec ReceiverSpec::at(double x, double y) const
{
    ReceiverSpec moved = *this;
    moved.position.x = x;
    moved.position.y = y;
    return moved;
}

void TdmSchedule::validate(const std::vector<TransmitterSpec>& transmitters) const
{
    require(frames_per_slot >= 1, "frames_per_slot must be >= 1");
    require(order.size() == transmitters.size(),
            "schedule must contain every transmitter exactly once");
    for (const auto& tx : transmitters) {
        require(std::count(order.begin(), order.end(), tx.id) == 1,
                "schedule must contain transmitter " + std::to_string(tx.id) + " exactly once");
    }
}

void Scene::validate() const
{
    room.validate();
    receiver.validate();
    require(transmitters.size() >= 3, "at least three transmitters are required");
    for (std::size_t i = 0; i < transmitters.size(); ++i) {
        const auto& tx = transmitters[i];
        tx.validate();
        require(tx.id >= 0 && tx.id <= 255, "transmitter id must fit in 8 bits");
        for (std::size_t j = 0; j < i; ++j) {
            require(transmitters[j].id != tx.id, "duplicate transmitter id");
        }
        require(tx.position.x >= 0.0 && tx.position.x <= room.room_length &&
                    tx.position.y >= 0.0 && tx.position.y <= room.room_width &&
                    tx.position.z > 0.0 && tx.position.z <= room.room_height,
                "transmitter " + std::to_string(tx.id) + " lies outside the room");
        require(tx.position.z > receiver.position.z,
                "transmitter " + std::to_string(tx.id) + " must be above the receiver plane");
    }
    require(receiver.position.z > 0.0 && receiver.position.z < room.room_height,
            "receiver height must lie inside the room");
    schedule.validate(transmitters);
}

const TransmitterSpec* Scene::find_transmitter(int id) const
{
    for (const auto& tx : transmitters) {
        if (tx.id == id) return &tx;
    }
    return nullptr;
}

const TransmitterSpec& Scene::transmitter(int id) const
{
    if (const auto* tx = find_transmitter(id)) return *tx;
    throw std::out_of_range("unknown transmitter id " + std::to_string(id));
}

std::vector<TransmitterSpec> default_transmitters()
{
    std::vector<TransmitterSpec> txs;
    const double coords[4][2] = {{2.0, 2.0}, {2.0, 4.0}, {4.0, 2.0}, {4.0, 4.0}};
    for (int k = 0; k < 4; ++k) {
        TransmitterSpec tx;
        tx.id = k + 1;
        tx.position = {coords[k][0], coords[k][1], 3.3};
        txs.push_back(tx);
    }
    return txs;
}

Scene default_scene()
{
    Scene scene;
    scene.transmitters = default_transmitters();
    return scene;
}

LinkGeometry link_geometry(const TransmitterSpec& tx, const ReceiverSpec& rx)
{
    const Vec3 delta = tx.position - rx.position;
    const double d = norm(delta);
    if (d <= 0.0) throw std::invalid_argument("coincident endpoints");
    const double c = std::clamp(delta.z / d, 0.0, 1.0);
    return {d, c, c};
}

}  // namespace vlcpos
