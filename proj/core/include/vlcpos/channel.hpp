#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vlcpos/geometry.hpp"
#include "vlcpos/scene.hpp"

namespace vlcpos {

/// CPC gain n^2 / sin^2(fov) inside the field of view, 0 outside.
/// Angles in radians. Throws std::invalid_argument for fov <= 0.
double concentrator_gain(double psi, double fov, double n);

/// Lambertian order m = -ln 2 / ln(cos(half_power_angle)), angle in degrees.
double lambertian_order(double half_power_angle_deg);

/// Line-of-sight DC gain of a vertical LED / vertical photodiode link.
double los_dc_gain(const TransmitterSpec& tx, const ReceiverSpec& rx);

/// Time-binned optical power gains. Bin i covers
/// [t0 + i * bin_width, t0 + (i + 1) * bin_width).
struct ImpulseResponse {
    double bin_width = 0.0;
    double t0 = 0.0;
    std::vector<double> gains;
    double los_gain = 0.0;
    double total_gain = 0.0;
};

double channel_dc_gain(const ImpulseResponse& ir);

/// Re-bins onto a coarser grid anchored at t0.
ImpulseResponse rebin(const ImpulseResponse& ir, double bin_width);

/// Causal linear convolution, truncated to out_len samples.
std::vector<double> convolve(std::span<const double> signal, std::span<const double> taps,
                             std::size_t out_len);

struct ChannelOptions {
    double internal_bin = 0.2e-9;  // s
    // A patch is split 2x2 while its side exceeds ratio * distance.
    double subdivision_ratio = 0.35;
    int max_subdivision_depth = 6;
};

/// Planar rectangular surface element: center +/- half_u +/- half_v.
struct Patch {
    Vec3 center;
    Vec3 half_u;
    Vec3 half_v;
    Vec3 normal;
    double area = 0.0;
    double rho = 0.0;
};

/// Discretizes the six room surfaces into patches of at most `pitch` per side,
/// normals pointing into the room. Order: floor, ceiling, x=0, x=L, y=0, y=W.
std::vector<Patch> discretize_room(const SceneConfig& room, double pitch);

/// Fraction of power emitted uniformly and diffusely by `source` that lands on `target`.
double patch_transfer(const Patch& source, const Patch& target, const ChannelOptions& opt = {});

/// Power that a single LED leaves on the room surfaces after 0, 1 and 2
/// reflections, precomputed once per transmitter and independent of the
/// receiver. Immutable after construction and safe to share between threads.
class ReflectionField {
public:
    ReflectionField(const SceneConfig& room, const TransmitterSpec& tx, int max_bounces,
                    ChannelOptions options = {});

    /// Impulse response at the internal bin width.
    ImpulseResponse evaluate(const ReceiverSpec& rx) const;

    int max_bounces() const { return max_bounces_; }
    const ChannelOptions& options() const { return options_; }
    const TransmitterSpec& transmitter() const { return tx_; }
    /// Total power arriving on the fine surface grid straight from the LED.
    double first_hop_power() const;

    class Profile {
    public:
        void add(long bin, double value);
        void add_shifted(const Profile& other, long shift, double scale);
        bool empty() const { return w_.empty(); }
        long first() const { return first_; }
        const std::vector<double>& weights() const { return w_; }

    private:
        long first_ = 0;
        std::vector<double> w_;
    };

private:
    struct FineEmitter {
        Patch patch;
        double power;  // rho * arriving power
        double delay;  // s, LED to patch center
    };
    struct CoarseEmitter {
        Patch patch;
        Profile emission;  // rho * arriving power, binned on absolute delay
    };

    TransmitterSpec tx_;
    int max_bounces_;
    ChannelOptions options_;
    double first_hop_power_ = 0.0;
    std::vector<FineEmitter> fine_;
    std::vector<CoarseEmitter> coarse_;
};

/// Convenience wrapper: builds the field for one transmitter, evaluates it
/// at the receiver and re-bins to `bin_width`.
ImpulseResponse impulse_response(const TransmitterSpec& tx, const ReceiverSpec& rx,
                                 const SceneConfig& room, int max_bounces, double bin_width,
                                 const ChannelOptions& options = {});

}  // namespace vlcpos
