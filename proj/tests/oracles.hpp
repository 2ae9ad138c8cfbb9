#pragma once

// Independent reference implementations used to check the library. None of
// these call into vlcpos numerics beyond plain data types.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "vlcpos/positioning.hpp"

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// O(N^2) DFT, forward (sign -1), unscaled.
inline std::vector<cplx> dft(std::span<const cplx> x)
{
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        for (std::size_t t = 0; t < n; ++t) {
            const double a = -2.0 * pi * double((k * t) % n) / double(n);
            acc += x[t] * cplx(std::cos(a), std::sin(a));
        }
        out[k] = acc;
    }
    return out;
}

inline std::vector<cplx> dft_real(std::span<const double> x)
{
    std::vector<cplx> c(x.begin(), x.end());
    return dft(c);
}

// Frequency response of real taps at bin k of an n-point transform.
inline cplx tap_response(std::span<const double> taps, std::size_t k, std::size_t n)
{
    cplx acc{};
    for (std::size_t t = 0; t < taps.size(); ++t) {
        const double a = -2.0 * pi * double((k * t) % n) / double(n);
        acc += taps[t] * cplx(std::cos(a), std::sin(a));
    }
    return acc;
}

// Straight linear convolution, truncated to out_len.
inline std::vector<double> convolve(std::span<const double> x, std::span<const double> h, std::size_t out_len)
{
    std::vector<double> y(out_len, 0.0);
    for (std::size_t i = 0; i < out_len; ++i) {
        for (std::size_t j = 0; j < h.size() && j <= i; ++j) {
            if (i - j < x.size()) y[i] += h[j] * x[i - j];
        }
    }
    return y;
}

// Lambertian LOS gain written out from the textbook formula, axes vertical.
struct Link {
    double tx_x, tx_y, tx_z;
    double rx_x, rx_y, rx_z;
    double m = 1.0, area = 1e-4, ts = 1.0, n = 1.5, fov_deg = 70.0;
};

inline double los_gain(const Link& l)
{
    const double dx = l.rx_x - l.tx_x, dy = l.rx_y - l.tx_y, dz = l.tx_z - l.rx_z;
    const double d2 = dx * dx + dy * dy + dz * dz;
    const double d = std::sqrt(d2);
    const double c = dz / d;
    const double fov = l.fov_deg * pi / 180.0;
    if (std::acos(c) > fov) return 0.0;
    const double g = l.n * l.n / (std::sin(fov) * std::sin(fov));
    return (l.m + 1.0) * l.area * std::pow(c, l.m) * l.ts * g * c / (2.0 * pi * d2);
}

// Linearized lateration system with anchor `ref` subtracted, solved through
// the 2x2 normal equations by Cramer's rule.
struct Point {
    double x, y;
};

inline void linear_system(std::span<const vlcpos::Anchor> a, std::size_t ref, std::vector<double>& ax,
                          std::vector<double>& ay, std::vector<double>& b)
{
    ax.clear();
    ay.clear();
    b.clear();
    const auto& r = a[ref];
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == ref) continue;
        ax.push_back(a[j].x - r.x);
        ay.push_back(a[j].y - r.y);
        b.push_back(0.5 * ((r.range * r.range - a[j].range * a[j].range) + (a[j].x * a[j].x + a[j].y * a[j].y) -
                           (r.x * r.x + r.y * r.y)));
    }
}

inline Point normal_equations(std::span<const vlcpos::Anchor> a, std::size_t ref = 0)
{
    std::vector<double> ax, ay, b;
    linear_system(a, ref, ax, ay, b);
    double sxx = 0, sxy = 0, syy = 0, bx = 0, by = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        sxx += ax[i] * ax[i];
        sxy += ax[i] * ay[i];
        syy += ay[i] * ay[i];
        bx += ax[i] * b[i];
        by += ay[i] * b[i];
    }
    const double det = sxx * syy - sxy * sxy;
    return {(bx * syy - by * sxy) / det, (sxx * by - sxy * bx) / det};
}

inline double linearized_cost(std::span<const vlcpos::Anchor> a, Point p, std::size_t ref = 0)
{
    std::vector<double> ax, ay, b;
    linear_system(a, ref, ax, ay, b);
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double e = ax[i] * p.x + ay[i] * p.y - b[i];
        s += e * e;
    }
    return s;
}

inline double range_cost(std::span<const vlcpos::Anchor> a, Point p)
{
    double s = 0.0;
    for (const auto& k : a) {
        const double e = std::hypot(p.x - k.x, p.y - k.y) - k.range;
        s += e * e;
    }
    return s;
}

// Exhaustive search on a square grid of pitch `step` centred on `c`.
template <class Cost>
Point grid_minimizer(Cost cost, Point c, double half_width, double step)
{
    const long n = std::lround(half_width / step);
    Point best = c;
    double best_cost = std::numeric_limits<double>::infinity();
    for (long i = -n; i <= n; ++i) {
        for (long j = -n; j <= n; ++j) {
            const Point p{c.x + double(i) * step, c.y + double(j) * step};
            const double v = cost(p);
            if (v < best_cost) {
                best_cost = v;
                best = p;
            }
        }
    }
    return best;
}

// Seeded generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::vector<std::uint8_t> bits(std::size_t n)
    {
        std::vector<std::uint8_t> b(n);
        for (auto& v : b) v = static_cast<std::uint8_t>(rng_() & 1u);
        return b;
    }
    std::vector<cplx> gaussian_symbols(std::size_t n)
    {
        std::normal_distribution<double> g;
        std::vector<cplx> s(n);
        for (auto& v : s) v = {g(rng_), g(rng_)};
        return s;
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
