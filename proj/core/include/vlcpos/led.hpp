#pragma once

#include <array>
#include <filesystem>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace vlcpos {

/// Static voltage -> optical power transfer of an LED: a fifth-order
/// polynomial evaluated on a clamped drive range.
struct LedModel {
    std::array<double, 6> coefficients{};  // c0..c5, W per V^k
    double bias_voltage = 3.2;
    double v_min = -std::numeric_limits<double>::infinity();
    double v_max = std::numeric_limits<double>::infinity();

    /// Polynomial value without clamping.
    double transfer(double volts) const;
    /// d(transfer)/dv without clamping.
    double slope(double volts) const;
    /// Clamp, evaluate, floor at zero.
    double operator()(double volts) const;

    /// Checks bias inside the clamp range and, for a finite range, that the
    /// transfer is non-decreasing and non-negative on a 1 mV grid.
    void validate() const;

    /// First-order Taylor expansion around the bias point, without clamping.
    LedModel linearized() const;

    friend bool operator==(const LedModel&, const LedModel&) = default;
};

/// c1 = 1, everything else zero, no clamp.
LedModel identity_led(double bias_voltage = 0.0);

/// OPTEK OVSPxBCR4 fit biased at 3.2 V, clamp range 3.0 .. 4.0 V.
LedModel default_led();

/// Digitized transfer curve the default coefficients were fitted to.
std::vector<std::pair<double, double>> default_led_samples();

/// Least-squares polynomial fit of degree 5 to (volts, watts) samples.
std::array<double, 6> fit_transfer(std::span<const std::pair<double, double>> samples);

std::vector<double> apply(const LedModel& model, std::span<const double> drive);

/// bias + depth * signal / reference. `reference` defaults to the
/// bipolar-equivalent RMS of the unipolar input, sqrt(2) * rms(signal).
/// Throws "empty frame" for a zero-energy signal when no reference is given.
std::vector<double> drive_mapping(std::span<const double> signal, const LedModel& model,
                                  double modulation_depth, double reference = 0.0);

double bipolar_equivalent_rms(std::span<const double> signal);

/// Coefficient file: {"format": "vlcpos-led", "version": 1, "coefficients": [...],
/// "v_min": .., "v_max": .., "bias_voltage": ..}.
LedModel load_led_model(const std::filesystem::path& path);
void save_led_model(const LedModel& model, const std::filesystem::path& path);

}  // namespace vlcpos
