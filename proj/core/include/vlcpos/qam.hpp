#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vlcpos/fft.hpp"

namespace vlcpos {

/// Gray-labelled QAM alphabet with unit average energy. M = 4, 16 and 64 are
/// square; M = 32 is the 6x6 cross built by folding the outer columns of an
/// 8x4 Gray rectangle onto the top and bottom rows.
class Constellation {
public:
    explicit Constellation(int m);

    int size() const { return static_cast<int>(points_.size()); }
    int bits_per_symbol() const { return bits_; }
    cplx point(unsigned label) const { return points_.at(label); }
    std::span<const cplx> points() const { return points_; }

    /// Label of the closest alphabet point.
    unsigned nearest(cplx s) const;

    /// MSB-first bit packing; bits.size() must be a multiple of bits_per_symbol().
    std::vector<cplx> modulate(std::span<const std::uint8_t> bits) const;
    std::vector<std::uint8_t> demodulate(std::span<const cplx> symbols) const;

private:
    int bits_ = 0;
    std::vector<cplx> points_;
};

}  // namespace vlcpos
