#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vlcpos/geometry.hpp"

namespace vlcpos {

/// Room geometry, diffuse surface reflectivities and the reflector
/// discretization used by the channel integrator.
struct SceneConfig {
    double room_length = 6.0;  // x extent, m
    double room_width = 6.0;   // y extent, m
    double room_height = 3.5;  // z extent, m
    double rho_wall = 0.66;
    double rho_ceiling = 0.35;
    double rho_floor = 0.60;
    // First-bounce element pitch.
    double surface_element_size = 0.1;
    // Pitch for the second and third bounce.
    double higher_order_element_size = 0.2;
    // Metadata only; reflectivities are wavelength independent.
    double wavelength_nm = 420.0;

    void validate() const;
    friend bool operator==(const SceneConfig&, const SceneConfig&) = default;
};

/// A ceiling LED bulb. The optical axis always points straight down.
struct TransmitterSpec {
    int id = 1;
    Vec3 position{2.0, 2.0, 3.3};
    double lambertian_order = 1.0;
    double power_high = 5.0;  // W, bit "1"
    double power_low = 3.0;   // W, bit "0"
    double elevation_deg = -90.0;
    double azimuth_deg = 0.0;

    void validate() const;
    friend bool operator==(const TransmitterSpec&, const TransmitterSpec&) = default;
};

/// Upward facing photodiode behind an optical filter and a compound
/// parabolic concentrator.
struct ReceiverSpec {
    Vec3 position{3.0, 3.0, 1.2};
    double area = 1e-4;  // m^2
    double fov_deg = 70.0;
    double refractive_index = 1.5;
    double optical_filter_gain = 1.0;
    double elevation_deg = 90.0;
    double azimuth_deg = 0.0;

    void validate() const;
    ReceiverSpec at(double x, double y) const;
    friend bool operator==(const ReceiverSpec&, const ReceiverSpec&) = default;
};

/// Strict time-division schedule: one LED owns the whole channel per slot.
struct TdmSchedule {
    std::vector<int> order{1, 2, 3, 4};
    int frames_per_slot = 2;

    void validate(const std::vector<TransmitterSpec>& transmitters) const;
    friend bool operator==(const TdmSchedule&, const TdmSchedule&) = default;
};

/// Everything physical about the experiment.
struct Scene {
    SceneConfig room;
    std::vector<TransmitterSpec> transmitters;
    ReceiverSpec receiver;
    TdmSchedule schedule;

    void validate() const;
    const TransmitterSpec& transmitter(int id) const;
    const TransmitterSpec* find_transmitter(int id) const;
    friend bool operator==(const Scene&, const Scene&) = default;
};

/// Four LEDs at (2,2), (2,4), (4,2), (4,4), 3.3 m high, in a 6 x 6 x 3.5 m room.
std::vector<TransmitterSpec> default_transmitters();
Scene default_scene();

struct LinkGeometry {
    double distance;
    double cos_irradiance;  // cos(phi)
    double cos_incidence;   // cos(psi)
};

/// Both optical axes are vertical, so cos(phi) = cos(psi) = (H - h) / d.
/// Throws std::invalid_argument for coincident endpoints.
LinkGeometry link_geometry(const TransmitterSpec& tx, const ReceiverSpec& rx);

}  // namespace vlcpos
