#include "vlcpos/led.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

namespace vlcpos {

double LedModel::transfer(double v) const
{
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * v + *it;
    return acc;
}

double LedModel::slope(double v) const
{
    double acc = 0.0;
    for (std::size_t k = coefficients.size() - 1; k >= 1; --k) {
        acc = acc * v + static_cast<double>(k) * coefficients[k];
    }
    return acc;
}

double LedModel::operator()(double v) const
{
    return std::max(0.0, transfer(std::clamp(v, v_min, v_max)));
}

void LedModel::validate() const
{
    if (!(v_min < v_max)) throw std::invalid_argument("LED clamp range must satisfy v_min < v_max");
    if (bias_voltage < v_min || bias_voltage > v_max) {
        throw std::invalid_argument("LED bias voltage outside clamp range");
    }
    if (!std::isfinite(v_min) || !std::isfinite(v_max)) return;
    const long steps = std::lround((v_max - v_min) / 1e-3);
    double prev = transfer(v_min);
    if (prev < 0.0) throw std::invalid_argument("LED transfer negative inside clamp range");
    for (long i = 1; i <= steps; ++i) {
        const double v = std::min(v_max, v_min + static_cast<double>(i) * 1e-3);
        const double p = transfer(v);
        if (p < 0.0) throw std::invalid_argument("LED transfer negative inside clamp range");
        if (p < prev) throw std::invalid_argument("LED transfer decreasing inside clamp range");
        prev = p;
    }
}

LedModel LedModel::linearized() const
{
    LedModel lin;
    const double k = slope(bias_voltage);
    lin.coefficients[0] = transfer(bias_voltage) - k * bias_voltage;
    lin.coefficients[1] = k;
    lin.bias_voltage = bias_voltage;
    return lin;
}

LedModel identity_led(double bias_voltage)
{
    LedModel m;
    m.coefficients[1] = 1.0;
    m.bias_voltage = bias_voltage;
    return m;
}

std::vector<std::pair<double, double>> default_led_samples()
{
    // Typical curve, 3.0 V threshold to saturation at 4.0 V.
    return {{3.0, 0.00}, {3.1, 0.04}, {3.2, 0.15}, {3.3, 0.33}, {3.4, 0.58}, {3.5, 0.88},
            {3.6, 1.15}, {3.7, 1.36}, {3.8, 1.50}, {3.9, 1.58}, {4.0, 1.62}};
}

LedModel default_led()
{
    LedModel m;
    m.coefficients = {-5061.2274305776928, 7477.0668684433613, -4393.0280452873958,
                      1282.7454838012259,  -186.12325176501471, 10.737179488126998};
    m.bias_voltage = 3.2;
    m.v_min = 3.0;
    m.v_max = 4.0;
    return m;
}

std::array<double, 6> fit_transfer(std::span<const std::pair<double, double>> samples)
{
    if (samples.size() < 6) throw std::invalid_argument("fifth-order fit needs at least 6 samples");
    const auto n = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd vander(n, 6);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double p = 1.0;
        for (int k = 0; k < 6; ++k) {
            vander(i, k) = p;
            p *= samples[static_cast<std::size_t>(i)].first;
        }
        rhs(i) = samples[static_cast<std::size_t>(i)].second;
    }
    const Eigen::VectorXd c = vander.colPivHouseholderQr().solve(rhs);
    std::array<double, 6> out{};
    for (int k = 0; k < 6; ++k) out[static_cast<std::size_t>(k)] = c(k);
    return out;
}

std::vector<double> apply(const LedModel& model, std::span<const double> drive)
{
    std::vector<double> out(drive.size());
    std::transform(drive.begin(), drive.end(), out.begin(), [&](double v) { return model(v); });
    return out;
}

double bipolar_equivalent_rms(std::span<const double> signal)
{
    if (signal.empty()) return 0.0;
    double e = 0.0;
    for (double s : signal) e += s * s;
    return std::sqrt(2.0 * e / static_cast<double>(signal.size()));
}

std::vector<double> drive_mapping(std::span<const double> signal, const LedModel& model,
                                  double modulation_depth, double reference)
{
    if (reference <= 0.0) {
        reference = bipolar_equivalent_rms(signal);
        if (reference <= 0.0) {
            if (modulation_depth == 0.0 || signal.empty()) {
                return std::vector<double>(signal.size(), model.bias_voltage);
            }
            throw std::invalid_argument("empty frame");
        }
    }
    std::vector<double> out(signal.size());
    const double scale = modulation_depth / reference;
    for (std::size_t i = 0; i < signal.size(); ++i) out[i] = model.bias_voltage + scale * signal[i];
    return out;
}

LedModel load_led_model(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open LED model file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed LED model file " + path.string() + ": " + e.what());
    }
    if (j.value("format", "") != "vlcpos-led" || j.value("version", 0) != 1) {
        throw std::runtime_error("unsupported LED model file " + path.string());
    }
    LedModel m;
    const auto& c = j.at("coefficients");
    if (!c.is_array() || c.size() != 6) throw std::runtime_error("LED model needs exactly 6 coefficients");
    for (std::size_t k = 0; k < 6; ++k) m.coefficients[k] = c[k].get<double>();
    m.v_min = j.at("v_min").get<double>();
    m.v_max = j.at("v_max").get<double>();
    m.bias_voltage = j.at("bias_voltage").get<double>();
    m.validate();
    return m;
}

void save_led_model(const LedModel& model, const std::filesystem::path& path)
{
    nlohmann::ordered_json j;
    j["format"] = "vlcpos-led";
    j["version"] = 1;
    j["coefficients"] = model.coefficients;
    j["v_min"] = model.v_min;
    j["v_max"] = model.v_max;
    j["bias_voltage"] = model.bias_voltage;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write LED model file " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace vlcpos
