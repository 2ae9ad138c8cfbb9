#include "vlcpos/qam.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vlcpos {

namespace {

unsigned gray_to_binary(unsigned g)
{
    unsigned b = g;
    while (g >>= 1) b ^= g;
    return b;
}

// Amplitude of Gray label g on a PAM axis with `levels` points spaced 2 apart.
double pam_level(unsigned g, unsigned levels)
{
    return 2.0 * static_cast<double>(gray_to_binary(g)) - static_cast<double>(levels - 1);
}

}  // namespace

Constellation::Constellation(int m)
{
    switch (m) {
    case 4: bits_ = 2; break;
    case 16: bits_ = 4; break;
    case 32: bits_ = 5; break;
    case 64: bits_ = 6; break;
    default: throw std::invalid_argument("constellation size must be 4, 16, 32 or 64");
    }
    points_.resize(static_cast<std::size_t>(m));
    if (m == 32) {
        for (unsigned label = 0; label < 32; ++label) {
            double i = pam_level(label >> 2, 8);
            double q = pam_level(label & 3u, 4);
            if (std::abs(i) == 7.0) {
                const double si = i > 0 ? 1.0 : -1.0;
                const double sq = q > 0 ? 1.0 : -1.0;
                i = si * (std::abs(q) == 1.0 ? 1.0 : 3.0);
                q = sq * 5.0;
            }
            points_[label] = {i, q};
        }
    } else {
        const unsigned half = static_cast<unsigned>(bits_ / 2);
        const unsigned levels = 1u << half;
        for (unsigned label = 0; label < static_cast<unsigned>(m); ++label) {
            points_[label] = {pam_level(label >> half, levels),
                              pam_level(label & (levels - 1), levels)};
        }
    }
    double energy = 0.0;
    for (const auto& p : points_) energy += std::norm(p);
    const double scale = 1.0 / std::sqrt(energy / static_cast<double>(m));
    for (auto& p : points_) p *= scale;
}

unsigned Constellation::nearest(cplx s) const
{
    unsigned best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (unsigned k = 0; k < points_.size(); ++k) {
        const double d = std::norm(s - points_[k]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

std::vector<cplx> Constellation::modulate(std::span<const std::uint8_t> bits) const
{
    if (bits.size() % static_cast<std::size_t>(bits_) != 0) {
        throw std::invalid_argument("bit count is not a multiple of bits per symbol");
    }
    std::vector<cplx> out;
    out.reserve(bits.size() / static_cast<std::size_t>(bits_));
    for (std::size_t i = 0; i < bits.size(); i += static_cast<std::size_t>(bits_)) {
        unsigned label = 0;
        for (int b = 0; b < bits_; ++b) label = (label << 1) | (bits[i + static_cast<std::size_t>(b)] & 1u);
        out.push_back(points_[label]);
    }
    return out;
}

std::vector<std::uint8_t> Constellation::demodulate(std::span<const cplx> symbols) const
{
    std::vector<std::uint8_t> out;
    out.reserve(symbols.size() * static_cast<std::size_t>(bits_));
    for (const cplx& s : symbols) {
        const unsigned label = nearest(s);
        for (int b = bits_ - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
    }
    return out;
}

}  // namespace vlcpos
