#pragma once

#include <span>
#include <vector>

#include "vlcpos/fft.hpp"

namespace vlcpos {

struct OfdmConfig {
    int n_subcarriers = 512;
    int cp_length = 16;
    int constellation_size = 32;
    double data_rate = 25e6;  // bit/s

    void validate() const;
    int data_subcarriers() const { return n_subcarriers / 4; }
    int frame_length() const { return n_subcarriers + cp_length; }
    int bits_per_frame() const;
    /// (N/4 * log2 M) / (data_rate * (N + cp)); 48.48 ns with the defaults.
    double sample_period() const;
    friend bool operator==(const OfdmConfig&, const OfdmConfig&) = default;
};

struct OfdmFrame {
    std::vector<cplx> freq_domain;    // N, Hermitian, data on odd bins only
    std::vector<double> time_domain;  // N + cp, bipolar
    std::vector<double> clipped;      // N + cp, negative samples zeroed
};

/// Places I_0..I_{N/4-1} on subcarriers 1, 3, .., N/2-1 and their conjugates
/// on N-1, N-3, .., N/2+1. Everything else is zero.
std::vector<cplx> map_subcarriers(std::span<const cplx> symbols, int n);

/// IDFT, cyclic prefix, clip at zero.
OfdmFrame transmit(std::span<const cplx> symbols, const OfdmConfig& cfg);

/// Drops the cyclic prefix, takes the DFT and returns the raw values of the
/// N/4 data subcarriers before equalization.
std::vector<cplx> data_subcarriers(std::span<const double> rx_samples, const OfdmConfig& cfg);

/// Single-tap equalization of the data subcarriers followed by the x2 that
/// undoes the clipping attenuation. `eq` holds one gain per data subcarrier.
std::vector<cplx> receive(std::span<const double> rx_samples, const OfdmConfig& cfg,
                          std::span<const cplx> eq);

struct ChannelGains {
    std::vector<cplx> per_subcarrier;  // usable directly as `eq` in receive()
    double p_bar = 0.0;                // (4/N) * sum |gain_i|
};

/// Training-based estimate. `received` are the pre-equalization data
/// subcarriers; the clipping factor 1/2 is compensated.
ChannelGains estimate_channel(std::span<const cplx> training, std::span<const cplx> received,
                              const OfdmConfig& cfg);

}  // namespace vlcpos
