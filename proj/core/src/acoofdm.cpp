#include "vlcpos/acoofdm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vlcpos {

void OfdmConfig::validate() const
{
    const int n = n_subcarriers;
    if (n < 8 || (n & (n - 1)) != 0) throw std::invalid_argument("n_subcarriers must be a power of two >= 8");
    if (cp_length < 0 || cp_length >= n) throw std::invalid_argument("cp_length must lie in [0, N)");
    if (constellation_size != 4 && constellation_size != 16 && constellation_size != 32 &&
        constellation_size != 64) {
        throw std::invalid_argument("constellation_size must be 4, 16, 32 or 64");
    }
    if (!(data_rate > 0.0)) throw std::invalid_argument("data_rate must be positive");
}

int OfdmConfig::bits_per_frame() const
{
    return data_subcarriers() * static_cast<int>(std::lround(std::log2(constellation_size)));
}

double OfdmConfig::sample_period() const
{
    return static_cast<double>(bits_per_frame()) / (data_rate * static_cast<double>(frame_length()));
}

std::vector<cplx> map_subcarriers(std::span<const cplx> symbols, int n)
{
    if (n < 8 || n % 4 != 0) throw std::invalid_argument("subcarrier count must be a multiple of 4 and >= 8");
    if (symbols.size() != static_cast<std::size_t>(n / 4)) {
        throw std::invalid_argument("expected " + std::to_string(n / 4) + " symbols, got " +
                                    std::to_string(symbols.size()));
    }
    std::vector<cplx> s(static_cast<std::size_t>(n), cplx{});
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const std::size_t k = 2 * i + 1;
        s[k] = symbols[i];
        s[static_cast<std::size_t>(n) - k] = std::conj(symbols[i]);
    }
    return s;
}

OfdmFrame transmit(std::span<const cplx> symbols, const OfdmConfig& cfg)
{
    OfdmFrame frame;
    frame.freq_domain = map_subcarriers(symbols, cfg.n_subcarriers);
    const auto x = ifft(frame.freq_domain);
    const auto n = static_cast<std::size_t>(cfg.n_subcarriers);
    const auto cp = static_cast<std::size_t>(cfg.cp_length);
    frame.time_domain.resize(n + cp);
    for (std::size_t i = 0; i < cp; ++i) frame.time_domain[i] = x[n - cp + i].real();
    for (std::size_t i = 0; i < n; ++i) frame.time_domain[cp + i] = x[i].real();
    frame.clipped.resize(frame.time_domain.size());
    std::transform(frame.time_domain.begin(), frame.time_domain.end(), frame.clipped.begin(),
                   [](double v) { return std::max(v, 0.0); });
    return frame;
}

std::vector<cplx> data_subcarriers(std::span<const double> rx_samples, const OfdmConfig& cfg)
{
    const auto n = static_cast<std::size_t>(cfg.n_subcarriers);
    const auto cp = static_cast<std::size_t>(cfg.cp_length);
    if (rx_samples.size() != n + cp) throw std::invalid_argument("received frame must have N + cp samples");
    std::vector<cplx> body(n);
    for (std::size_t i = 0; i < n; ++i) body[i] = rx_samples[cp + i];
    const auto spectrum = fft(body);
    std::vector<cplx> out(n / 4);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = spectrum[2 * i + 1];
    return out;
}

std::vector<cplx> receive(std::span<const double> rx_samples, const OfdmConfig& cfg,
                          std::span<const cplx> eq)
{
    auto y = data_subcarriers(rx_samples, cfg);
    if (eq.size() != y.size()) throw std::invalid_argument("equalizer must have one tap per data subcarrier");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (eq[i] == cplx{}) throw std::invalid_argument("unestimated subcarrier");
        y[i] = 2.0 * y[i] / eq[i];
    }
    return y;
}

ChannelGains estimate_channel(std::span<const cplx> training, std::span<const cplx> received,
                              const OfdmConfig& cfg)
{
    const auto count = static_cast<std::size_t>(cfg.data_subcarriers());
    if (training.size() != count || received.size() != count) {
        throw std::invalid_argument("training and received vectors must hold N/4 symbols");
    }
    ChannelGains out;
    out.per_subcarrier.resize(count);
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        if (training[i] == cplx{}) throw std::invalid_argument("training symbol is zero");
        out.per_subcarrier[i] = 2.0 * received[i] / training[i];
        sum += std::abs(out.per_subcarrier[i]);
    }
    out.p_bar = sum * 4.0 / static_cast<double>(cfg.n_subcarriers);
    return out;
}

}  // namespace vlcpos
