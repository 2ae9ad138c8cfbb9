#include "vlcpos/positioning.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "vlcpos/channel.hpp"

namespace vlcpos {

LinkBudget LinkBudget::from(const TransmitterSpec& tx, const ReceiverSpec& rx)
{
    LinkBudget link;
    link.lambertian_order = tx.lambertian_order;
    link.area = rx.area;
    link.filter_gain = rx.optical_filter_gain;
    link.fov_deg = rx.fov_deg;
    link.concentrator_gain = vlcpos::concentrator_gain(0.0, deg_to_rad(rx.fov_deg), rx.refractive_index);
    link.tx_height = tx.position.z;
    link.rx_height = rx.position.z;
    return link;
}

DistanceEstimate estimate_distance(double p_bar, const LinkBudget& link)
{
    if (!(p_bar > 0.0)) throw std::invalid_argument("estimated DC gain must be positive");
    const double dh = link.tx_height - link.rx_height;
    if (!(dh > 0.0)) throw std::invalid_argument("transmitter must be above the receiver");
    const double m = link.lambertian_order;
    const double numerator =
        (m + 1.0) * link.area * link.filter_gain * link.concentrator_gain * std::pow(dh, m + 1.0);
    DistanceEstimate out;
    out.distance = std::pow(numerator / (2.0 * kPi * p_bar), 1.0 / (m + 3.0));
    out.outside_fov = dh / out.distance < std::cos(deg_to_rad(link.fov_deg));
    return out;
}

RangeEstimate horizontal_range(double distance, double tx_height, double rx_height)
{
    const double dh = tx_height - rx_height;
    const double r2 = distance * distance - dh * dh;
    if (r2 < 0.0) return {0.0, true};
    return {std::sqrt(r2), false};
}

PositionEstimate laterate(std::span<const Anchor> anchors, std::size_t reference)
{
    if (anchors.size() < 4) throw std::invalid_argument("lateration needs at least four anchors");
    if (reference >= anchors.size()) throw std::invalid_argument("reference anchor out of range");
    const auto rows = static_cast<Eigen::Index>(anchors.size() - 1);
    Eigen::MatrixXd a(rows, 2);
    Eigen::VectorXd b(rows);
    const Anchor& ref = anchors[reference];
    const double ref_sq = ref.x * ref.x + ref.y * ref.y;
    Eigen::Index row = 0;
    for (std::size_t j = 0; j < anchors.size(); ++j) {
        if (j == reference) continue;
        const Anchor& an = anchors[j];
        a(row, 0) = an.x - ref.x;
        a(row, 1) = an.y - ref.y;
        b(row) = 0.5 * ((ref.range * ref.range - an.range * an.range) + (an.x * an.x + an.y * an.y) - ref_sq);
        ++row;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-10);
    if (qr.rank() < 2) throw std::invalid_argument("degenerate anchor geometry");
    const Eigen::Vector2d x = qr.solve(b);

    PositionEstimate out;
    out.x = x(0);
    out.y = x(1);
    out.residual_norm = (a * x - b).squaredNorm();
    for (const auto& an : anchors) out.used_tx.push_back(an.tx_id);
    return out;
}

}  // namespace vlcpos
