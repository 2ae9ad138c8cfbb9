#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vlcpos {

struct OokConfig {
    double bit_rate = 25e6;  // bit/s
    double power_high = 5.0;  // W
    double power_low = 3.0;   // W
    int training_length = 1024;

    void validate() const;
    double bit_period() const { return 1.0 / bit_rate; }
    friend bool operator==(const OokConfig&, const OokConfig&) = default;
};

/// One optical power sample per bit.
std::vector<double> transmit_ook(std::span<const std::uint8_t> bits, const OokConfig& cfg);

/// mean(rx) / mean(tx) over a known training pattern.
double estimate_gain_ook(std::span<const double> tx_train, std::span<const double> rx_train);

}  // namespace vlcpos
