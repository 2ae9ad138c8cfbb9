#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "vlcpos/acoofdm.hpp"
#include "vlcpos/led.hpp"
#include "vlcpos/qam.hpp"

using namespace vlcpos;

namespace {

OfdmFrame seeded_frame(std::uint64_t seed, const OfdmConfig& cfg = {})
{
    oracle::Gen gen(seed);
    const Constellation qam(cfg.constellation_size);
    return transmit(qam.modulate(gen.bits(static_cast<std::size_t>(cfg.bits_per_frame()))), cfg);
}

// Error vector magnitude of the odd subcarriers after the LED, using the
// least-squares scalar gain so only distortion counts.
double led_evm(const OfdmFrame& frame, const LedModel& led, double depth, const OfdmConfig& cfg)
{
    const double ref = bipolar_equivalent_rms(frame.clipped);
    const auto optical = vlcpos::apply(led, drive_mapping(frame.clipped, led, depth, ref));
    std::vector<double> body(optical.begin() + cfg.cp_length, optical.end());
    const auto spec = oracle::dft_real(body);
    std::vector<cplx> y, x;
    for (int i = 0; i < cfg.data_subcarriers(); ++i) {
        const auto k = static_cast<std::size_t>(2 * i + 1);
        y.push_back(spec[k]);
        x.push_back(frame.freq_domain[k]);
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        num += (y[i] * std::conj(x[i])).real();
        den += std::norm(x[i]);
    }
    const double g = num / den;
    double err = 0;
    for (std::size_t i = 0; i < y.size(); ++i) err += std::norm(y[i] / g - x[i]);
    return std::sqrt(err / den);
}

}  // namespace

TEST_CASE("identity model passes samples through")
{
    const LedModel id = identity_led();
    oracle::Gen gen(1);
    std::vector<double> v(100);
    for (auto& s : v) s = gen.uniform(0, 10);
    CHECK(vlcpos::apply(id, v) == v);
}

TEST_CASE("drive below v_min evaluates at v_min")
{
    const LedModel led = default_led();
    const std::vector<double> v{2.0, 2.9, -1.0, 4.5, 10.0};
    const auto out = vlcpos::apply(led, v);
    CHECK(out[0] == led.transfer(3.0));
    CHECK(out[1] == led.transfer(3.0));
    CHECK(out[2] == led.transfer(3.0));
    CHECK(out[3] == led.transfer(4.0));
    CHECK(out[4] == led.transfer(4.0));
}

TEST_CASE("default model")
{
    const LedModel led = default_led();
    CHECK_NOTHROW(led.validate());
    CHECK(led.bias_voltage == 3.2);
    CHECK(led.bias_voltage > led.v_min);
    CHECK(led.bias_voltage < led.v_max);
    CHECK(led.v_min == 3.0);
    CHECK(led.v_max == 4.0);
    // Shape of the curve it was fitted to.
    for (const auto& [v, p] : default_led_samples()) CHECK(led(v) == doctest::Approx(p).epsilon(0.02).scale(1.0));
    CHECK(led(3.0) < 1e-3);
    CHECK(led(3.5) == doctest::Approx(0.88).epsilon(0.02));
    CHECK(led.slope(3.95) < led.slope(3.5));
}

TEST_CASE("shipped coefficient file matches the built-in model")
{
    const LedModel file = load_led_model(std::filesystem::path(VLCPOS_DATA_DIR) / "led_ovspxbcr4.json");
    CHECK(file == default_led());
}

TEST_CASE("fit reproduces the shipped coefficients")
{
    const auto fit = fit_transfer(default_led_samples());
    const LedModel led = default_led();
    for (double v = 3.0; v <= 4.0; v += 0.01) {
        double p = 0, x = 1;
        for (double c : fit) {
            p += c * x;
            x *= v;
        }
        REQUIRE(p == doctest::Approx(led.transfer(v)).epsilon(1e-8).scale(1.0));
    }
    CHECK_THROWS(fit_transfer(std::vector<std::pair<double, double>>(5, {3.0, 0.0})));
}

TEST_CASE("validation catches non-monotone and negative transfers")
{
    LedModel m = identity_led(0.5);
    m.v_min = 0.0;
    m.v_max = 1.0;
    CHECK_NOTHROW(m.validate());
    m.coefficients = {0, 1, -2, 0, 0, 0};  // v - 2v^2 peaks at 0.25
    CHECK_THROWS_WITH(m.validate(), doctest::Contains("decreasing"));
    m.coefficients = {-0.1, 1, 0, 0, 0, 0};
    CHECK_THROWS_WITH(m.validate(), doctest::Contains("negative"));
    m = identity_led(2.0);
    m.v_min = 0.0;
    m.v_max = 1.0;
    CHECK_THROWS(m.validate());
}

TEST_CASE("save and load round trip")
{
    const auto path = std::filesystem::temp_directory_path() / "vlcpos_led_roundtrip.json";
    LedModel m = default_led();
    m.bias_voltage = 3.3;
    save_led_model(m, path);
    CHECK(load_led_model(path) == m);
    std::filesystem::remove(path);
    CHECK_THROWS(load_led_model(path));
}

TEST_CASE("drive mapping edge cases")
{
    const LedModel led = default_led();
    const std::vector<double> zeros(64, 0.0);
    CHECK(drive_mapping(zeros, led, 0.3, 0.05) == std::vector<double>(64, 3.2));
    CHECK(drive_mapping(zeros, led, 0.0) == std::vector<double>(64, 3.2));
    CHECK_THROWS_WITH(drive_mapping(zeros, led, 0.3), doctest::Contains("empty frame"));

    const auto frame = seeded_frame(2);
    CHECK(drive_mapping(frame.clipped, led, 0.0) == std::vector<double>(frame.clipped.size(), 3.2));

    const auto drive = drive_mapping(frame.clipped, led, 0.3);
    const double ref = bipolar_equivalent_rms(frame.clipped);
    for (std::size_t i = 0; i < drive.size(); ++i) {
        REQUIRE(drive[i] == doctest::Approx(3.2 + 0.3 * frame.clipped[i] / ref).epsilon(1e-14));
    }
}

TEST_CASE("depth 0.3 V keeps at least 99% of samples inside the clamp range")
{
    const LedModel led = default_led();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto drive = drive_mapping(seeded_frame(seed).clipped, led, 0.3);
        const auto inside = std::count_if(drive.begin(), drive.end(),
                                          [&](double v) { return v >= led.v_min && v <= led.v_max; });
        REQUIRE(double(inside) / double(drive.size()) >= 0.99);
    }
}

TEST_CASE("identity LED leaves the OFDM chain exact")
{
    OfdmConfig cfg;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        oracle::Gen gen(seed);
        const Constellation qam(cfg.constellation_size);
        const auto symbols = qam.modulate(gen.bits(static_cast<std::size_t>(cfg.bits_per_frame())));
        const auto frame = transmit(symbols, cfg);
        const double ref = bipolar_equivalent_rms(frame.clipped);
        const double depth = gen.uniform(0.1, 3.0);
        const auto optical = vlcpos::apply(identity_led(), drive_mapping(frame.clipped, identity_led(), depth, ref));
        const std::vector<cplx> eq(static_cast<std::size_t>(cfg.data_subcarriers()), cplx(depth / ref));
        const auto rx = receive(optical, cfg, eq);
        for (std::size_t i = 0; i < rx.size(); ++i) REQUIRE(std::abs(rx[i] - symbols[i]) < 1e-9);
    }
}

TEST_CASE("distortion grows strictly with depth once samples clamp")
{
    const OfdmConfig cfg;
    const LedModel led = default_led();
    const auto frame = seeded_frame(7, cfg);
    const double ref = bipolar_equivalent_rms(frame.clipped);
    const double peak = *std::max_element(frame.clipped.begin(), frame.clipped.end());
    const double threshold = (led.v_max - led.bias_voltage) * ref / peak;  // first sample reaches v_max

    double prev = led_evm(frame, led, threshold, cfg);
    for (double depth = threshold + 0.05; depth < 2.0; depth += 0.05) {
        const double evm = led_evm(frame, led, depth, cfg);
        REQUIRE(evm > prev);
        prev = evm;
    }
}

TEST_CASE("linearized model is the tangent at the bias point")
{
    const LedModel led = default_led();
    const LedModel lin = led.linearized();
    CHECK(lin.transfer(3.2) == doctest::Approx(led.transfer(3.2)).epsilon(1e-12));
    double derivative = 0.0;
    for (int k = 1; k < 6; ++k) derivative += k * led.coefficients[static_cast<std::size_t>(k)] * std::pow(3.2, k - 1);
    CHECK(lin.slope(3.2) == doctest::Approx(derivative).epsilon(1e-9));
    CHECK(lin.transfer(3.5) - lin.transfer(3.4) == doctest::Approx(lin.transfer(3.3) - lin.transfer(3.2)).epsilon(1e-10));
}
