#include "vlcpos/ook.hpp"

#include <numeric>
#include <stdexcept>

namespace vlcpos {

void OokConfig::validate() const
{
    if (!(bit_rate > 0.0)) throw std::invalid_argument("bit_rate must be positive");
    if (!(power_high > power_low && power_low >= 0.0)) {
        throw std::invalid_argument("OOK powers must satisfy power_high > power_low >= 0");
    }
    if (training_length < 1) throw std::invalid_argument("training_length must be >= 1");
}

std::vector<double> transmit_ook(std::span<const std::uint8_t> bits, const OokConfig& cfg)
{
    if (bits.empty()) throw std::invalid_argument("OOK transmit needs at least one bit");
    std::vector<double> out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? cfg.power_high : cfg.power_low;
    return out;
}

double estimate_gain_ook(std::span<const double> tx_train, std::span<const double> rx_train)
{
    if (tx_train.size() != rx_train.size()) throw std::invalid_argument("training length mismatch");
    if (tx_train.empty()) throw std::invalid_argument("empty training sequence");
    const double tx_sum = std::accumulate(tx_train.begin(), tx_train.end(), 0.0);
    if (!(tx_sum > 0.0)) throw std::invalid_argument("transmitted training has no power");
    return std::accumulate(rx_train.begin(), rx_train.end(), 0.0) / tx_sum;
}

}  // namespace vlcpos
