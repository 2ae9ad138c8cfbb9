#include "vlcpos/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "vlcpos/ir_cache.hpp"
#include "vlcpos/qam.hpp"

namespace vlcpos {

const char* to_string(Modulation m) { return m == Modulation::Ofdm ? "ofdm" : "ook"; }

Modulation modulation_from_string(const std::string& s)
{
    if (s == "ofdm") return Modulation::Ofdm;
    if (s == "ook") return Modulation::Ook;
    throw std::invalid_argument("unknown modulation '" + s + "' (expected ofdm or ook)");
}

void ExperimentConfig::validate() const
{
    scene.validate();
    ofdm.validate();
    ook.validate();
    led.validate();
    if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be positive");
    if (max_bounces < 0 || max_bounces > 3) throw std::invalid_argument("max_bounces must lie in 0..3");
    if (!(modulation_depth >= 0.0)) throw std::invalid_argument("modulation_depth must be >= 0");
    if (enabled(Modulation::Ofdm) && modulation_depth == 0.0) {
        throw std::invalid_argument("OFDM needs a positive modulation_depth");
    }
    if (training_frames < 1 || training_frames > scene.schedule.frames_per_slot) {
        throw std::invalid_argument("training_frames must lie in 1..frames_per_slot");
    }
    if (!(noise_stddev >= 0.0)) throw std::invalid_argument("noise_stddev must be >= 0");
    if (workers < 0) throw std::invalid_argument("workers must be >= 0");
    for (std::size_t i = 0; i < modulations.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (modulations[i] == modulations[j]) throw std::invalid_argument("duplicate modulation");
        }
    }
    if (!(channel.internal_bin > 0.0) || !(channel.subdivision_ratio > 0.0) ||
        channel.max_subdivision_depth < 0) {
        throw std::invalid_argument("invalid channel integrator options");
    }
}

bool ExperimentConfig::enabled(Modulation m) const
{
    return std::find(modulations.begin(), modulations.end(), m) != modulations.end();
}

std::string flags_to_string(unsigned flags)
{
    static constexpr std::pair<unsigned, const char*> names[] = {
        {kFlagOutsideFov, "outside_fov"},
        {kFlagRangeClamped, "range_clamped"},
        {kFlagIdMismatch, "id_mismatch"},
        {kFlagEstimationFailed, "estimation_failed"},
        {kFlagDegenerate, "degenerate"},
    };
    std::string out;
    for (const auto& [bit, name] : names) {
        if (!(flags & bit)) continue;
        if (!out.empty()) out += '|';
        out += name;
    }
    return out.empty() ? "none" : out;
}

ProbePoints probe_points(const SceneConfig& room)
{
    constexpr double inset = 0.05;
    return {{inset, inset}, {room.room_length / 2.0, inset}, {room.room_length / 2.0, room.room_width / 2.0}};
}

std::array<double, 4> led_rectangle(const Scene& scene)
{
    std::array<double, 4> r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& tx : scene.transmitters) {
        r[0] = std::min(r[0], tx.position.x);
        r[1] = std::max(r[1], tx.position.x);
        r[2] = std::min(r[2], tx.position.y);
        r[3] = std::max(r[3], tx.position.y);
    }
    return r;
}

std::vector<double> grid_axis(double extent, double step)
{
    const auto n = static_cast<std::size_t>(std::floor(extent / step + 1e-9)) + 1;
    std::vector<double> axis(n);
    for (std::size_t i = 0; i < n; ++i) axis[i] = std::min(static_cast<double>(i) * step, extent);
    return axis;
}

namespace {

enum Stream : std::uint64_t { kTrainingStream = 0, kDataStream = 1, kOokStream = 2, kNoiseStream = 3 };

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b)
{
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(a), hi(a), lo(b), hi(b)};
    return std::mt19937_64(seq);
}

void append_random_bits(std::vector<std::uint8_t>& bits, std::mt19937_64& rng, std::size_t count)
{
    for (std::size_t i = 0; i < count; ++i) bits.push_back(static_cast<std::uint8_t>(rng() >> 63));
}

void append_id_bits(std::vector<std::uint8_t>& bits, int id)
{
    for (int b = 7; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((id >> b) & 1));
}

// Data frames open with the ID repeated kIdRepeats times; decoded by majority.
constexpr int kIdRepeats = 9;

int decode_id(const std::vector<std::uint8_t>& bits)
{
    int id = 0;
    for (int b = 0; b < 8; ++b) {
        int ones = 0;
        for (int r = 0; r < kIdRepeats; ++r) ones += bits[static_cast<std::size_t>(8 * r + b)];
        id = (id << 1) | (2 * ones > kIdRepeats ? 1 : 0);
    }
    return id;
}

void add_noise(std::vector<double>& samples, double stddev, std::mt19937_64 rng)
{
    if (stddev <= 0.0) return;
    std::normal_distribution<double> gauss(0.0, stddev);
    for (double& s : samples) s += gauss(rng);
}

}  // namespace

// ---------------------------------------------------------------------------

Experiment::Experiment(ExperimentConfig cfg, std::shared_ptr<IrCache> cache)
    : cfg_(std::move(cfg)), cache_(std::move(cache))
{
    cfg_.validate();
    if (cache_) scene_hash_ = scene_hash(cfg_.scene, cfg_.channel);
    for (std::size_t i = 0; i < cfg_.scene.transmitters.size(); ++i) {
        fields_.push_back(std::make_unique<FieldSlot>());
    }

    led_ = cfg_.led_nonlinearity ? cfg_.led : cfg_.led.linearized();

    const Constellation qam(cfg_.ofdm.constellation_size);
    std::vector<std::uint8_t> bits;
    auto rng = make_stream(cfg_.rng_seed, kTrainingStream, 0, 0);
    append_random_bits(bits, rng, static_cast<std::size_t>(cfg_.ofdm.bits_per_frame()));
    training_ = qam.modulate(bits);
    training_frame_ = transmit(training_, cfg_.ofdm);
    drive_reference_ = bipolar_equivalent_rms(training_frame_.clipped);

    // Electro-optic gain of the LED seen through the same mean-magnitude
    // estimator the receiver uses, so a flat channel is recovered exactly.
    if (cfg_.enabled(Modulation::Ofdm)) {
        const auto optical = vlcpos::apply(
            led_, drive_mapping(training_frame_.clipped, led_, cfg_.modulation_depth, drive_reference_));
        tx_gain_ = estimate_channel(training_, data_subcarriers(optical, cfg_.ofdm), cfg_.ofdm).p_bar;
        if (!(tx_gain_ > 0.0)) throw std::invalid_argument("LED produces no modulation at this bias and depth");
    }
}

Experiment::~Experiment() = default;

std::uint64_t Experiment::point_key(double x, double y)
{
    const auto qx = static_cast<std::uint64_t>(std::llround(x * 1000.0));
    const auto qy = static_cast<std::uint64_t>(std::llround(y * 1000.0));
    return (qx << 32) ^ qy;
}

const ReflectionField& Experiment::field(std::size_t index) const
{
    FieldSlot& slot = *fields_.at(index);
    std::call_once(slot.once, [&] {
        slot.field = std::make_unique<ReflectionField>(cfg_.scene.room, cfg_.scene.transmitters[index],
                                                       cfg_.max_bounces, cfg_.channel);
    });
    return *slot.field;
}

ImpulseResponse Experiment::channel(int tx_id, double x, double y) const
{
    const ReceiverSpec rx = cfg_.scene.receiver.at(x, y);
    std::optional<IrCacheKey> key;
    if (cache_) {
        key = make_cache_key(scene_hash_, tx_id, rx.position, cfg_.max_bounces, cfg_.channel.internal_bin);
        if (auto hit = cache_->find(*key)) return *hit;
    }
    std::size_t index = 0;
    while (cfg_.scene.transmitters[index].id != tx_id) ++index;
    ImpulseResponse ir = field(index).evaluate(rx);
    if (cache_) cache_->insert(*key, ir);
    return ir;
}

std::vector<double> Experiment::ofdm_slot(int tx_id, std::uint64_t key) const
{
    const Constellation qam(cfg_.ofdm.constellation_size);
    auto rng = make_stream(cfg_.rng_seed, kDataStream, key, static_cast<std::uint64_t>(tx_id));
    std::vector<double> slot;
    for (int f = 0; f < cfg_.scene.schedule.frames_per_slot; ++f) {
        std::vector<double> clipped;
        if (f < cfg_.training_frames) {
            clipped = training_frame_.clipped;
        } else {
            std::vector<std::uint8_t> bits;
            for (int r = 0; r < kIdRepeats; ++r) append_id_bits(bits, tx_id);
            append_random_bits(bits, rng, static_cast<std::size_t>(cfg_.ofdm.bits_per_frame()) - bits.size());
            clipped = transmit(qam.modulate(bits), cfg_.ofdm).clipped;
        }
        const auto optical = vlcpos::apply(led_, drive_mapping(clipped, led_, cfg_.modulation_depth, drive_reference_));
        slot.insert(slot.end(), optical.begin(), optical.end());
    }
    return slot;
}

std::vector<std::uint8_t> Experiment::ook_training_bits(int tx_id) const
{
    const auto length = static_cast<std::size_t>(cfg_.ook.training_length);
    std::vector<std::uint8_t> bits;
    append_id_bits(bits, tx_id);
    auto rng = make_stream(cfg_.rng_seed, kOokStream, static_cast<std::uint64_t>(tx_id), 0);
    if (bits.size() < length) append_random_bits(bits, rng, length - bits.size());
    bits.resize(length);
    return bits;
}

PointRecord Experiment::run_ofdm(double x, double y, const std::vector<ImpulseResponse>& irs) const
{
    const auto& cfg = cfg_.ofdm;
    const auto frame_len = static_cast<std::size_t>(cfg.frame_length());
    const std::uint64_t key = point_key(x, y);
    const Constellation qam(cfg.constellation_size);
    unsigned flags = kFlagNone;
    std::vector<ChannelEstimate> estimates;

    const auto& order = cfg_.scene.schedule.order;
    for (std::size_t s = 0; s < order.size(); ++s) {
        const int tx_id = order[s];
        const auto taps = rebin(irs[s], cfg.sample_period()).gains;
        const auto waveform = ofdm_slot(tx_id, key);
        auto rx = convolve(waveform, taps, waveform.size());
        add_noise(rx, cfg_.noise_stddev, make_stream(cfg_.rng_seed, kNoiseStream, key, static_cast<std::uint64_t>(tx_id)));

        double p_bar = 0.0;
        std::vector<cplx> eq(static_cast<std::size_t>(cfg.data_subcarriers()), cplx{});
        try {
            for (int f = 0; f < cfg_.training_frames; ++f) {
                const std::span<const double> seg(rx.data() + static_cast<std::size_t>(f) * frame_len, frame_len);
                auto y_k = data_subcarriers(seg, cfg);
                for (auto& v : y_k) v /= tx_gain_;
                const auto gains = estimate_channel(training_, y_k, cfg);
                p_bar += gains.p_bar;
                for (std::size_t i = 0; i < eq.size(); ++i) eq[i] += gains.per_subcarrier[i];
            }
        } catch (const std::invalid_argument&) {
            flags |= kFlagEstimationFailed;
        }
        p_bar /= cfg_.training_frames;

        const TransmitterSpec* tx = &cfg_.scene.transmitter(tx_id);
        if (cfg_.scene.schedule.frames_per_slot > cfg_.training_frames) {
            try {
                const std::span<const double> seg(rx.data() + static_cast<std::size_t>(cfg_.training_frames) * frame_len,
                                                  frame_len);
                std::vector<cplx> taps_eq(eq.size());
                for (std::size_t i = 0; i < eq.size(); ++i) taps_eq[i] = eq[i] / double(cfg_.training_frames) * tx_gain_;
                const auto bits = qam.demodulate(receive(seg, cfg, taps_eq));
                const int decoded = decode_id(bits);
                if (decoded != tx_id) {
                    flags |= kFlagIdMismatch;
                    if (const auto* other = cfg_.scene.find_transmitter(decoded)) tx = other;
                }
            } catch (const std::invalid_argument&) {
                flags |= kFlagIdMismatch;
            }
        }
        estimates.push_back({tx->id, tx->position.x, tx->position.y, p_bar});
    }
    return locate(x, y, estimates, flags);
}

PointRecord Experiment::run_ook(double x, double y, const std::vector<ImpulseResponse>& irs) const
{
    const std::uint64_t key = point_key(x, y);
    std::vector<ChannelEstimate> estimates;
    const auto& order = cfg_.scene.schedule.order;
    for (std::size_t s = 0; s < order.size(); ++s) {
        const int tx_id = order[s];
        const auto tx_train = transmit_ook(ook_training_bits(tx_id), cfg_.ook);
        const auto taps = rebin(irs[s], cfg_.ook.bit_period()).gains;
        auto rx = convolve(tx_train, taps, tx_train.size());
        add_noise(rx, cfg_.noise_stddev, make_stream(cfg_.rng_seed, kNoiseStream, key, 1000u + static_cast<std::uint64_t>(tx_id)));
        const auto& tx = cfg_.scene.transmitter(tx_id);
        estimates.push_back({tx_id, tx.position.x, tx.position.y, estimate_gain_ook(tx_train, rx)});
    }
    return locate(x, y, estimates, kFlagNone);
}

PointRecord Experiment::locate(double x, double y, const std::vector<ChannelEstimate>& estimates,
                               unsigned flags) const
{
    PointRecord rec;
    rec.x_true = x;
    rec.y_true = y;
    const ReceiverSpec rx = cfg_.scene.receiver.at(x, y);
    std::vector<Anchor> anchors;
    for (const auto& est : estimates) {
        rec.p_bar.push_back(est.p_bar);
        if (!(est.p_bar > 0.0) || !std::isfinite(est.p_bar)) {
            flags |= kFlagEstimationFailed;
            continue;
        }
        const auto& tx = cfg_.scene.transmitter(est.tx_id);
        const auto dist = estimate_distance(est.p_bar, LinkBudget::from(tx, rx));
        if (dist.outside_fov) flags |= kFlagOutsideFov;
        const auto range = horizontal_range(dist.distance, tx.position.z, rx.position.z);
        if (range.clamped) flags |= kFlagRangeClamped;
        anchors.push_back({est.tx_id, est.tx_x, est.tx_y, range.range});
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.x_est = rec.y_est = rec.error = nan;
    if (anchors.size() < 4) {
        rec.flags = flags | kFlagEstimationFailed;
        return rec;
    }
    try {
        const auto pos = laterate(anchors);
        rec.x_est = pos.x;
        rec.y_est = pos.y;
        rec.error = std::hypot(pos.x - x, pos.y - y);
    } catch (const std::invalid_argument&) {
        flags |= kFlagDegenerate;
    }
    rec.flags = flags;
    return rec;
}

PointResult Experiment::run_point(double x, double y) const
{
    const auto& room = cfg_.scene.room;
    if (x < 0.0 || x > room.room_length || y < 0.0 || y > room.room_width) {
        throw std::invalid_argument("receiver position outside the room");
    }
    std::vector<ImpulseResponse> irs;
    for (int id : cfg_.scene.schedule.order) irs.push_back(channel(id, x, y));
    PointResult out;
    if (cfg_.enabled(Modulation::Ofdm)) out.ofdm = run_ofdm(x, y, irs);
    if (cfg_.enabled(Modulation::Ook)) out.ook = run_ook(x, y, irs);
    return out;
}

std::vector<ErrorMap> Experiment::run_grid(int workers) const
{
    const auto xs = grid_axis(cfg_.scene.room.room_length, cfg_.grid_step);
    const auto ys = grid_axis(cfg_.scene.room.room_width, cfg_.grid_step);
    const std::size_t total = xs.size() * ys.size();
    std::vector<PointResult> results(total);

    if (workers < 0) workers = cfg_.workers;
    if (workers == 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(total, 1)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                results[i] = run_point(xs[i % xs.size()], ys[i / xs.size()]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    const auto probes = probe_points(cfg_.scene.room);
    const PointResult corner = run_point(probes.corner[0], probes.corner[1]);
    const PointResult edge = run_point(probes.edge[0], probes.edge[1]);
    const PointResult center = run_point(probes.center[0], probes.center[1]);
    const auto rect = led_rectangle(cfg_.scene);
    constexpr double eps = 1e-9;

    std::vector<ErrorMap> maps;
    for (Modulation m : cfg_.modulations) {
        ErrorMap map;
        map.modulation = m;
        map.nx = xs.size();
        map.ny = ys.size();
        double sum_all = 0.0;
        double sum_rect = 0.0;
        for (const auto& r : results) {
            const PointRecord& rec = *r.get(m);
            map.records.push_back(rec);
            if (rec.flags != kFlagNone) ++map.summary.flagged_points;
            if (!std::isfinite(rec.error)) continue;
            ++map.summary.points;
            sum_all += rec.error * rec.error;
            if (rec.x_true > rect[0] + eps && rec.x_true < rect[1] - eps && rec.y_true > rect[2] + eps &&
                rec.y_true < rect[3] - eps) {
                ++map.summary.rect_points;
                sum_rect += rec.error * rec.error;
            }
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        map.summary.rms_whole = map.summary.points ? std::sqrt(sum_all / double(map.summary.points)) : nan;
        map.summary.rms_rect = map.summary.rect_points ? std::sqrt(sum_rect / double(map.summary.rect_points)) : nan;
        map.summary.corner_err = corner.get(m)->error;
        map.summary.edge_err = edge.get(m)->error;
        map.summary.center_err = center.get(m)->error;
        maps.push_back(std::move(map));
    }
    return maps;
}

PointResult run_point(const ExperimentConfig& cfg, double x, double y)
{
    return Experiment(cfg).run_point(x, y);
}

std::vector<ErrorMap> run_grid(const ExperimentConfig& cfg)
{
    std::shared_ptr<IrCache> cache;
    if (cfg.ir_cache) {
        cache = std::make_shared<IrCache>();
        cache->load(*cfg.ir_cache);
    }
    const Experiment experiment(cfg, cache);
    auto maps = experiment.run_grid();
    if (cache) cache->save(*cfg.ir_cache);
    return maps;
}

// ---------------------------------------------------------------------------
// Output files

namespace {

std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

nlohmann::ordered_json number_or_null(double v)
{
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

void emit_results(const std::vector<ErrorMap>& maps, const ExperimentConfig& cfg,
                  const std::filesystem::path& out_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw std::runtime_error("cannot create output directory " + out_dir.string());
    }

    {
        auto csv = open_for_write(out_dir / "positions.csv");
        csv << "modulation,x_true,y_true,x_est,y_est,error_m,flags\n";
        for (const auto& map : maps) {
            for (const auto& r : map.records) {
                csv << to_string(map.modulation) << ',' << fmt("%.6f", r.x_true) << ',' << fmt("%.6f", r.y_true)
                    << ',' << fmt("%.9g", r.x_est) << ',' << fmt("%.9g", r.y_est) << ','
                    << fmt("%.9g", r.error) << ',' << flags_to_string(r.flags) << '\n';
            }
        }
    }

    {
        auto hist = open_for_write(out_dir / "histogram.csv");
        hist << "modulation,bin_lo,bin_hi,count\n";
        const auto bins = static_cast<std::size_t>(std::lround(kHistogramRange / kHistogramBinWidth));
        for (const auto& map : maps) {
            std::vector<std::size_t> counts(bins + 1, 0);
            for (const auto& r : map.records) {
                if (!std::isfinite(r.error)) continue;
                const auto b = static_cast<std::size_t>(std::floor(r.error / kHistogramBinWidth));
                ++counts[std::min(b, bins)];
            }
            for (std::size_t b = 0; b < bins; ++b) {
                hist << to_string(map.modulation) << ',' << fmt("%.2f", double(b) * kHistogramBinWidth) << ','
                     << fmt("%.2f", double(b + 1) * kHistogramBinWidth) << ',' << counts[b] << '\n';
            }
            hist << to_string(map.modulation) << ',' << fmt("%.2f", kHistogramRange) << ",inf," << counts[bins]
                 << '\n';
        }
    }

    {
        using json = nlohmann::ordered_json;
        const auto probes = probe_points(cfg.scene.room);
        const auto rect = led_rectangle(cfg.scene);
        const double rect_fraction = (rect[1] - rect[0]) * (rect[3] - rect[2]) /
                                     (cfg.scene.room.room_length * cfg.scene.room.room_width);
        json j;
        j["format"] = "vlcpos-summary";
        j["version"] = 1;
        json mods = json::array();
        for (auto m : cfg.modulations) mods.push_back(to_string(m));
        j["metadata"] = {{"grid_step", cfg.grid_step},
                         {"max_bounces", cfg.max_bounces},
                         {"rng_seed", cfg.rng_seed},
                         {"led_nonlinearity", cfg.led_nonlinearity},
                         {"modulations", mods},
                         {"probes",
                          {{"corner", probes.corner}, {"edge", probes.edge}, {"center", probes.center}}},
                         {"led_rectangle", rect},
                         {"led_rectangle_area_fraction", rect_fraction},
                         {"histogram", {{"bin_width", kHistogramBinWidth}, {"range", kHistogramRange}}}};
        j["rows"] = json::array();
        for (const auto& map : maps) {
            const auto& s = map.summary;
            j["rows"].push_back({{"modulation", to_string(map.modulation)},
                                 {"corner", number_or_null(s.corner_err)},
                                 {"edge", number_or_null(s.edge_err)},
                                 {"center", number_or_null(s.center_err)},
                                 {"rms_rect", number_or_null(s.rms_rect)},
                                 {"rms_whole", number_or_null(s.rms_whole)},
                                 {"points", s.points},
                                 {"rect_points", s.rect_points},
                                 {"flagged_points", s.flagged_points},
                                 {"grid", {map.nx, map.ny}}});
        }
        auto out = open_for_write(out_dir / "summary.json");
        out << j.dump(2) << '\n';
    }
}

void dump_frames(const Experiment& experiment, const std::filesystem::path& out_dir)
{
    using json = nlohmann::ordered_json;
    const auto dir = out_dir / "frames";
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string());

    const auto& cfg = experiment.config();
    const OfdmFrame training = transmit(experiment.training_symbols(), cfg.ofdm);
    auto frame_json = [](const OfdmFrame& f) {
        std::vector<double> re, im;
        for (const auto& v : f.freq_domain) {
            re.push_back(v.real());
            im.push_back(v.imag());
        }
        return json{{"freq_re", re}, {"freq_im", im}, {"time", f.time_domain}, {"clipped", f.clipped}};
    };
    {
        json j = frame_json(training);
        j["drive_reference"] = experiment.drive_reference();
        j["transmitter_gain"] = experiment.transmitter_gain();
        auto out = open_for_write(dir / "training.json");
        out << j.dump() << '\n';
    }
    const auto probes = probe_points(cfg.scene.room);
    const auto key = Experiment::point_key(probes.center[0], probes.center[1]);
    const auto frame_len = static_cast<std::size_t>(cfg.ofdm.frame_length());
    for (int id : cfg.scene.schedule.order) {
        const auto slot = experiment.ofdm_slot(id, key);
        json j{{"tx_id", id},
               {"frames_per_slot", cfg.scene.schedule.frames_per_slot},
               {"frame_length", frame_len},
               {"optical", slot}};
        auto out = open_for_write(dir / ("slot_tx" + std::to_string(id) + ".json"));
        out << j.dump() << '\n';
    }
}

}  // namespace vlcpos
