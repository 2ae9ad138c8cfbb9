#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vlcpos/acoofdm.hpp"
#include "vlcpos/channel.hpp"
#include "vlcpos/led.hpp"
#include "vlcpos/ook.hpp"
#include "vlcpos/positioning.hpp"
#include "vlcpos/scene.hpp"

namespace vlcpos {

class IrCache;

enum class Modulation { Ofdm, Ook };

const char* to_string(Modulation m);
Modulation modulation_from_string(const std::string& s);

struct ExperimentConfig {
    Scene scene = default_scene();
    OfdmConfig ofdm;
    OokConfig ook;
    LedModel led = default_led();
    double modulation_depth = 0.3;  // V
    bool led_nonlinearity = true;
    double grid_step = 0.1;  // m
    int max_bounces = 3;
    std::vector<Modulation> modulations{Modulation::Ofdm, Modulation::Ook};
    std::uint64_t rng_seed = 1;
    int training_frames = 1;
    double noise_stddev = 0.0;  // additive white Gaussian noise on received samples; 0 = off
    int workers = 0;            // 0 = hardware concurrency
    std::optional<std::filesystem::path> ir_cache;
    ChannelOptions channel;

    void validate() const;
    bool enabled(Modulation m) const;
};

/// Per-point record flags.
enum PointFlag : unsigned {
    kFlagNone = 0,
    kFlagOutsideFov = 1u << 0,    // solved distance implies psi > fov for some LED
    kFlagRangeClamped = 1u << 1,  // d < H - h for some LED
    kFlagIdMismatch = 1u << 2,    // decoded LED ID differs from the scheduled one
    kFlagEstimationFailed = 1u << 3,
    kFlagDegenerate = 1u << 4,
};

std::string flags_to_string(unsigned flags);

struct PointRecord {
    double x_true = 0.0;
    double y_true = 0.0;
    double x_est = 0.0;
    double y_est = 0.0;
    double error = 0.0;  // m, NaN when no estimate was produced
    unsigned flags = kFlagNone;
    std::vector<double> p_bar;  // per LED in schedule order
};

struct PointResult {
    std::optional<PointRecord> ofdm;
    std::optional<PointRecord> ook;

    const std::optional<PointRecord>& get(Modulation m) const { return m == Modulation::Ofdm ? ofdm : ook; }
};

struct ErrorSummary {
    double rms_whole = 0.0;
    double rms_rect = 0.0;
    double corner_err = 0.0;
    double edge_err = 0.0;
    double center_err = 0.0;
    std::size_t points = 0;
    std::size_t rect_points = 0;
    std::size_t flagged_points = 0;
};

struct ErrorMap {
    Modulation modulation = Modulation::Ofdm;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<PointRecord> records;  // row-major: y outer, x inner
    ErrorSummary summary;
};

struct ProbePoints {
    std::array<double, 2> corner;
    std::array<double, 2> edge;
    std::array<double, 2> center;
};

/// Corner (0,0) and edge (L/2, 0) are pulled 5 cm into the room.
ProbePoints probe_points(const SceneConfig& room);

/// Bounding box of the LEDs: {x_min, x_max, y_min, y_max}.
std::array<double, 4> led_rectangle(const Scene& scene);

std::vector<double> grid_axis(double extent, double step);

/// Shared, read-only state of one experiment: channel fields per LED,
/// the training preamble and the transmitter calibration.
class Experiment {
public:
    explicit Experiment(ExperimentConfig cfg, std::shared_ptr<IrCache> cache = nullptr);
    ~Experiment();

    const ExperimentConfig& config() const { return cfg_; }

    /// Fine-resolution impulse response of one LED at (x, y, h).
    ImpulseResponse channel(int tx_id, double x, double y) const;

    PointResult run_point(double x, double y) const;
    std::vector<ErrorMap> run_grid(int workers = -1) const;

    const std::vector<cplx>& training_symbols() const { return training_; }
    double transmitter_gain() const { return tx_gain_; }
    double drive_reference() const { return drive_reference_; }
    const LedModel& effective_led() const { return led_; }

    /// Optical waveform of one slot: training frames then data frames for `tx_id`.
    std::vector<double> ofdm_slot(int tx_id, std::uint64_t point_key) const;
    std::vector<std::uint8_t> ook_training_bits(int tx_id) const;

    /// Per-point RNG stream key (quantized position), independent of grid order.
    static std::uint64_t point_key(double x, double y);

private:
    struct FieldSlot {
        std::once_flag once;
        std::unique_ptr<ReflectionField> field;
    };

    const ReflectionField& field(std::size_t index) const;
    PointRecord run_ofdm(double x, double y, const std::vector<ImpulseResponse>& irs) const;
    PointRecord run_ook(double x, double y, const std::vector<ImpulseResponse>& irs) const;
    PointRecord locate(double x, double y, const std::vector<ChannelEstimate>& estimates,
                       unsigned flags) const;

    ExperimentConfig cfg_;
    std::shared_ptr<IrCache> cache_;
    std::uint64_t scene_hash_ = 0;
    std::vector<std::unique_ptr<FieldSlot>> fields_;
    std::vector<cplx> training_;
    OfdmFrame training_frame_;
    LedModel led_;
    double drive_reference_ = 0.0;
    double tx_gain_ = 0.0;
};

PointResult run_point(const ExperimentConfig& cfg, double x, double y);

/// Full grid plus the probe points, one ErrorMap per enabled modulation.
std::vector<ErrorMap> run_grid(const ExperimentConfig& cfg);

/// positions.csv, summary.json and histogram.csv in out_dir.
void emit_results(const std::vector<ErrorMap>& maps, const ExperimentConfig& cfg,
                  const std::filesystem::path& out_dir);

/// Training frame and the first data frame of every LED at the center probe,
/// as JSON under out_dir/frames.
void dump_frames(const Experiment& experiment, const std::filesystem::path& out_dir);

inline constexpr double kHistogramBinWidth = 0.05;
inline constexpr double kHistogramRange = 3.0;

}  // namespace vlcpos
