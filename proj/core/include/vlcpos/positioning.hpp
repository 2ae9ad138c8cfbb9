#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vlcpos/scene.hpp"

namespace vlcpos {

/// Estimated channel DC gain of one LED together with the coordinates
/// decoded from its ID.
struct ChannelEstimate {
    int tx_id = 0;
    double tx_x = 0.0;
    double tx_y = 0.0;
    double p_bar = 0.0;
};

/// Link parameters needed to invert a DC gain into a distance.
struct LinkBudget {
    double lambertian_order = 1.0;
    double area = 1e-4;
    double filter_gain = 1.0;
    double concentrator_gain = 1.0;  // constant inside the field of view
    double fov_deg = 70.0;
    double tx_height = 3.3;
    double rx_height = 1.2;

    static LinkBudget from(const TransmitterSpec& tx, const ReceiverSpec& rx);
};

struct DistanceEstimate {
    double distance = 0.0;
    bool outside_fov = false;  // the solved distance puts the LED outside the FOV
};

/// d^(m+3) = (m+1) A Ts g (H-h)^(m+1) / (2 pi P).
/// Throws std::invalid_argument for p_bar <= 0 or H <= h.
DistanceEstimate estimate_distance(double p_bar, const LinkBudget& link);

struct RangeEstimate {
    double range = 0.0;
    bool clamped = false;  // d < H - h, range forced to zero
};

RangeEstimate horizontal_range(double distance, double tx_height, double rx_height);

struct Anchor {
    int tx_id = 0;
    double x = 0.0;
    double y = 0.0;
    double range = 0.0;
};

struct PositionEstimate {
    double x = 0.0;
    double y = 0.0;
    double residual_norm = 0.0;  // |A X - B|^2, m^4
    std::vector<int> used_tx;
};

/// Linearized lateration: subtract the reference anchor's circle equation
/// from the others and solve A X = B in the least-squares sense.
/// Throws std::invalid_argument("degenerate anchor geometry") when A is rank deficient.
PositionEstimate laterate(std::span<const Anchor> anchors, std::size_t reference = 0);

}  // namespace vlcpos
