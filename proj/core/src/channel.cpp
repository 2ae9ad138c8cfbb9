#include "vlcpos/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vlcpos {

double concentrator_gain(double psi, double fov, double n)
{
    if (!(fov > 0.0)) throw std::invalid_argument("concentrator fov must be positive");
    if (psi > fov) return 0.0;
    const double s = std::sin(fov);
    return n * n / (s * s);
}

double lambertian_order(double half_power_angle_deg)
{
    if (!(half_power_angle_deg > 0.0) || half_power_angle_deg >= 90.0) {
        throw std::invalid_argument("half-power angle must lie in (0, 90) degrees");
    }
    return -std::log(2.0) / std::log(std::cos(deg_to_rad(half_power_angle_deg)));
}

double los_dc_gain(const TransmitterSpec& tx, const ReceiverSpec& rx)
{
    const LinkGeometry g = link_geometry(tx, rx);
    const double psi = std::acos(g.cos_incidence);
    const double fov = deg_to_rad(rx.fov_deg);
    if (psi > fov) return 0.0;
    const double m = tx.lambertian_order;
    return (m + 1.0) * rx.area * std::pow(g.cos_irradiance, m) * rx.optical_filter_gain *
           concentrator_gain(psi, fov, rx.refractive_index) * g.cos_incidence /
           (2.0 * kPi * g.distance * g.distance);
}

double channel_dc_gain(const ImpulseResponse& ir)
{
    return std::accumulate(ir.gains.begin(), ir.gains.end(), 0.0);
}

ImpulseResponse rebin(const ImpulseResponse& ir, double bin_width)
{
    if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
    ImpulseResponse out;
    out.bin_width = bin_width;
    out.t0 = ir.t0;
    out.los_gain = ir.los_gain;
    out.total_gain = ir.total_gain;
    for (std::size_t i = 0; i < ir.gains.size(); ++i) {
        const auto n = static_cast<std::size_t>(
            std::floor(static_cast<double>(i) * ir.bin_width / bin_width + 1e-9));
        if (n >= out.gains.size()) out.gains.resize(n + 1, 0.0);
        out.gains[n] += ir.gains[i];
    }
    if (out.gains.empty()) out.gains.push_back(0.0);
    return out;
}

std::vector<double> convolve(std::span<const double> signal, std::span<const double> taps,
                             std::size_t out_len)
{
    std::vector<double> out(out_len, 0.0);
    for (std::size_t n = 0; n < out_len; ++n) {
        double acc = 0.0;
        const std::size_t jmax = std::min(taps.size(), n + 1);
        for (std::size_t j = 0; j < jmax; ++j) {
            const std::size_t k = n - j;
            if (k < signal.size()) acc += taps[j] * signal[k];
        }
        out[n] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Surface discretization and patch kernels

namespace {

void add_surface(std::vector<Patch>& out, Vec3 origin, Vec3 u_axis, double u_len, Vec3 v_axis,
                 double v_len, Vec3 normal, double rho, double pitch)
{
    const int nu = std::max(1, static_cast<int>(std::ceil(u_len / pitch - 1e-9)));
    const int nv = std::max(1, static_cast<int>(std::ceil(v_len / pitch - 1e-9)));
    const double du = u_len / nu;
    const double dv = v_len / nv;
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            Patch p;
            p.center = origin + u_axis * ((i + 0.5) * du) + v_axis * ((j + 0.5) * dv);
            p.half_u = u_axis * (0.5 * du);
            p.half_v = v_axis * (0.5 * dv);
            p.normal = normal;
            p.area = du * dv;
            p.rho = rho;
            out.push_back(p);
        }
    }
}

double side(const Patch& p) { return 2.0 * std::sqrt(std::max(dot(p.half_u, p.half_u), dot(p.half_v, p.half_v))); }

Patch quarter(const Patch& p, int q)
{
    const double su = (q & 1) ? 0.5 : -0.5;
    const double sv = (q & 2) ? 0.5 : -0.5;
    Patch c = p;
    c.center = p.center + p.half_u * su + p.half_v * sv;
    c.half_u = p.half_u * 0.5;
    c.half_v = p.half_v * 0.5;
    c.area = p.area * 0.25;
    return c;
}

// True when every point x of the patch satisfies dot(x - origin, n) <= 0.
bool entirely_behind(const Patch& p, const Vec3& origin, const Vec3& n)
{
    return dot(p.center - origin, n) + std::abs(dot(p.half_u, n)) + std::abs(dot(p.half_v, n)) <= 0.0;
}

template <class Fn>
void visit(const Patch& p, const Vec3& ref, const ChannelOptions& opt, int depth, Fn& fn)
{
    const double d = norm(p.center - ref);
    if (depth < opt.max_subdivision_depth && side(p) > opt.subdivision_ratio * d) {
        for (int q = 0; q < 4; ++q) visit(quarter(p, q), ref, opt, depth + 1, fn);
        return;
    }
    fn(p);
}

template <class Fn>
void visit_pair(const Patch& s, const Patch& r, const ChannelOptions& opt, int depth, Fn& fn)
{
    const double d = norm(s.center - r.center);
    const double ss = side(s);
    const double sr = side(r);
    if (depth < 2 * opt.max_subdivision_depth && std::max(ss, sr) > opt.subdivision_ratio * d) {
        if (ss >= sr) {
            for (int q = 0; q < 4; ++q) visit_pair(quarter(s, q), r, opt, depth + 1, fn);
        } else {
            for (int q = 0; q < 4; ++q) visit_pair(s, quarter(r, q), opt, depth + 1, fn);
        }
        return;
    }
    fn(s, r);
}

bool facing(const Patch& s, const Patch& r)
{
    return !entirely_behind(r, s.center, s.normal) && !entirely_behind(s, r.center, r.normal);
}

// Calls fn(fraction, distance) for each leaf pair of the diffuse transfer s -> r.
template <class Fn>
void transfer_leaves(const Patch& s, const Patch& r, const ChannelOptions& opt, Fn&& fn)
{
    if (!facing(s, r)) return;
    const double source_area = s.area;
    auto leaf = [&](const Patch& ls, const Patch& lr) {
        const Vec3 dv = lr.center - ls.center;
        const double d2 = dot(dv, dv);
        if (d2 <= 0.0) return;
        const double d = std::sqrt(d2);
        const double cs = dot(dv, ls.normal) / d;
        const double cr = -dot(dv, lr.normal) / d;
        if (cs <= 0.0 || cr <= 0.0) return;
        fn(cs * cr * lr.area / (kPi * d2) * (ls.area / source_area), d);
    };
    visit_pair(s, r, opt, 0, leaf);
}

constexpr Vec3 kDown{0.0, 0.0, -1.0};
constexpr Vec3 kUp{0.0, 0.0, 1.0};

long bin_of(double t, double width) { return static_cast<long>(std::floor(t / width)); }

}  // namespace

std::vector<Patch> discretize_room(const SceneConfig& room, double pitch)
{
    if (!(pitch > 0.0)) throw std::invalid_argument("surface element pitch must be positive");
    if (pitch > std::min({room.room_length, room.room_width, room.room_height})) {
        throw std::invalid_argument("surface element pitch larger than room dimension");
    }
    const double L = room.room_length;
    const double W = room.room_width;
    const double H = room.room_height;
    const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
    std::vector<Patch> out;
    add_surface(out, {0, 0, 0}, ex, L, ey, W, ez, room.rho_floor, pitch);
    add_surface(out, {0, 0, H}, ex, L, ey, W, ez * -1.0, room.rho_ceiling, pitch);
    add_surface(out, {0, 0, 0}, ey, W, ez, H, ex, room.rho_wall, pitch);
    add_surface(out, {L, 0, 0}, ey, W, ez, H, ex * -1.0, room.rho_wall, pitch);
    add_surface(out, {0, 0, 0}, ex, L, ez, H, ey, room.rho_wall, pitch);
    add_surface(out, {0, W, 0}, ex, L, ez, H, ey * -1.0, room.rho_wall, pitch);
    return out;
}

double patch_transfer(const Patch& source, const Patch& target, const ChannelOptions& opt)
{
    double total = 0.0;
    transfer_leaves(source, target, opt, [&](double f, double) { total += f; });
    return total;
}

// ---------------------------------------------------------------------------
// ReflectionField

void ReflectionField::Profile::add(long bin, double value)
{
    if (w_.empty()) {
        first_ = bin;
        w_.assign(1, value);
        return;
    }
    if (bin < first_) {
        w_.insert(w_.begin(), static_cast<std::size_t>(first_ - bin), 0.0);
        first_ = bin;
    }
    const auto idx = static_cast<std::size_t>(bin - first_);
    if (idx >= w_.size()) w_.resize(idx + 1, 0.0);
    w_[idx] += value;
}

void ReflectionField::Profile::add_shifted(const Profile& other, long shift, double scale)
{
    if (other.w_.empty()) return;
    const long lo = other.first_ + shift;
    const long hi = lo + static_cast<long>(other.w_.size()) - 1;
    if (w_.empty()) {
        first_ = lo;
        w_.assign(other.w_.size(), 0.0);
    }
    if (lo < first_) {
        w_.insert(w_.begin(), static_cast<std::size_t>(first_ - lo), 0.0);
        first_ = lo;
    }
    if (hi - first_ + 1 > static_cast<long>(w_.size())) w_.resize(static_cast<std::size_t>(hi - first_ + 1), 0.0);
    double* dst = w_.data() + (lo - first_);
    const double* src = other.w_.data();
    const std::size_t n = other.w_.size();
    for (std::size_t i = 0; i < n; ++i) dst[i] += scale * src[i];
}

ReflectionField::ReflectionField(const SceneConfig& room, const TransmitterSpec& tx, int max_bounces,
                                 ChannelOptions options)
    : tx_(tx), max_bounces_(max_bounces), options_(options)
{
    if (max_bounces < 0 || max_bounces > 3) throw std::invalid_argument("max_bounces must lie in 0..3");
    if (!(options.internal_bin > 0.0)) throw std::invalid_argument("bin width must be positive");
    room.validate();
    tx.validate();

    const double delta = options_.internal_bin;
    const Vec3 led = tx.position;
    const double m = tx.lambertian_order;

    for (const Patch& p : discretize_room(room, room.surface_element_size)) {
        if (entirely_behind(p, led, kDown) || dot(led - p.center, p.normal) <= 0.0) continue;
        double arriving = 0.0;
        auto leaf = [&](const Patch& l) {
            const Vec3 dv = l.center - led;
            const double d2 = dot(dv, dv);
            const double d = std::sqrt(d2);
            const double cs = dot(dv, kDown) / d;
            const double cr = -dot(dv, l.normal) / d;
            if (cs <= 0.0 || cr <= 0.0) return;
            arriving += (m + 1.0) / (2.0 * kPi * d2) * std::pow(cs, m) * cr * l.area;
        };
        visit(p, led, options_, 0, leaf);
        first_hop_power_ += arriving;
        if (max_bounces_ >= 1 && p.rho > 0.0 && arriving > 0.0) {
            fine_.push_back({p, p.rho * arriving, norm(p.center - led) / kSpeedOfLight});
        }
    }

    if (max_bounces_ < 2) return;

    for (const Patch& p : discretize_room(room, room.higher_order_element_size)) {
        if (p.rho > 0.0) coarse_.push_back({p, {}});
    }

    // Second bounce: fine emitters onto the coarse grid.
    std::vector<Profile> second(coarse_.size());
    for (std::size_t c = 0; c < coarse_.size(); ++c) {
        Profile& arrive = second[c];
        for (const FineEmitter& e : fine_) {
            transfer_leaves(e.patch, coarse_[c].patch, options_, [&](double f, double d) {
                arrive.add(bin_of(e.delay + d / kSpeedOfLight, delta), e.power * f);
            });
        }
    }
    for (std::size_t c = 0; c < coarse_.size(); ++c) {
        coarse_[c].emission.add_shifted(second[c], 0, coarse_[c].patch.rho);
    }

    if (max_bounces_ < 3) return;

    // Third bounce: coarse to coarse.
    std::vector<Profile> third(coarse_.size());
    for (std::size_t t = 0; t < coarse_.size(); ++t) {
        for (std::size_t s = 0; s < coarse_.size(); ++s) {
            if (s == t) continue;
            const Profile& src = coarse_[s].emission;
            if (src.empty()) continue;
            transfer_leaves(coarse_[s].patch, coarse_[t].patch, options_, [&](double f, double d) {
                third[t].add_shifted(src, std::lround(d / kSpeedOfLight / delta), f);
            });
        }
    }
    for (std::size_t c = 0; c < coarse_.size(); ++c) {
        coarse_[c].emission.add_shifted(third[c], 0, coarse_[c].patch.rho);
    }
}

double ReflectionField::first_hop_power() const { return first_hop_power_; }

ImpulseResponse ReflectionField::evaluate(const ReceiverSpec& rx) const
{
    rx.validate();
    const double delta = options_.internal_bin;
    const Vec3 at = rx.position;
    const double fov = deg_to_rad(rx.fov_deg);
    const double cos_fov = std::cos(fov);
    const double rx_scale = rx.area * rx.optical_filter_gain *
                            concentrator_gain(0.0, fov, rx.refractive_index) / kPi;

    Profile out;
    const double los = los_dc_gain(tx_, rx);
    if (los > 0.0) out.add(bin_of(norm(tx_.position - at) / kSpeedOfLight, delta), los);

    // Fraction of a patch's diffuse emission collected by the receiver.
    auto for_each_leaf = [&](const Patch& p, auto&& sink) {
        if (entirely_behind(p, at, kUp) || dot(at - p.center, p.normal) <= 0.0) return;
        const double source_area = p.area;
        auto leaf = [&](const Patch& l) {
            const Vec3 dv = at - l.center;
            const double d2 = dot(dv, dv);
            if (d2 <= 0.0) return;
            const double d = std::sqrt(d2);
            const double cs = dot(dv, l.normal) / d;
            const double cr = -dot(dv, kUp) / d;
            if (cs <= 0.0 || cr <= 0.0 || cr < cos_fov) return;
            sink(rx_scale * cs * cr / d2 * (l.area / source_area), d);
        };
        visit(p, at, options_, 0, leaf);
    };

    for (const FineEmitter& e : fine_) {
        for_each_leaf(e.patch, [&](double f, double d) {
            out.add(bin_of(e.delay + d / kSpeedOfLight, delta), e.power * f);
        });
    }
    for (const CoarseEmitter& c : coarse_) {
        if (c.emission.empty()) continue;
        for_each_leaf(c.patch, [&](double f, double d) {
            out.add_shifted(c.emission, std::lround(d / kSpeedOfLight / delta), f);
        });
    }

    ImpulseResponse ir;
    ir.bin_width = delta;
    ir.los_gain = los;
    const auto& w = out.weights();
    std::size_t first = 0;
    while (first < w.size() && w[first] <= 0.0) ++first;
    std::size_t last = w.size();
    while (last > first && w[last - 1] <= 0.0) --last;
    if (first == last) {
        ir.gains.assign(1, 0.0);
        return ir;
    }
    ir.t0 = static_cast<double>(out.first() + static_cast<long>(first)) * delta;
    ir.gains.assign(w.begin() + static_cast<long>(first), w.begin() + static_cast<long>(last));
    for (double g : ir.gains) ir.total_gain += g;
    return ir;
}

ImpulseResponse impulse_response(const TransmitterSpec& tx, const ReceiverSpec& rx,
                                 const SceneConfig& room, int max_bounces, double bin_width,
                                 const ChannelOptions& options)
{
    if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
    const ReflectionField field(room, tx, max_bounces, options);
    return rebin(field.evaluate(rx), bin_width);
}

}  // namespace vlcpos
