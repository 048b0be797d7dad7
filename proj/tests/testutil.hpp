#pragma once

// Shared generators and brute-force oracles. The oracles deliberately use
// direct loops (no sliding windows, no lookup tables, no counting sorts) so
// they stay independent of the library's optimized paths.

#include "clearvid/dehaze.hpp"
#include "clearvid/frame.hpp"
#include "clearvid/motion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace testutil {

using namespace clearvid;

inline std::uint8_t rand_byte(std::mt19937& rng) { return std::uint8_t(rng() & 0xffu); }

inline Frame random_frame(std::mt19937& rng, int w, int h, int index = 0) {
    Frame f = make_frame(w, h, {}, index);
    for (Rgb& p : f.samples) p = Rgb{rand_byte(rng), rand_byte(rng), rand_byte(rng)};
    return f;
}

inline Frame random_gray_frame(std::mt19937& rng, int w, int h, int index = 0) {
    Frame f = make_frame(w, h, {}, index);
    for (Rgb& p : f.samples) {
        const std::uint8_t v = rand_byte(rng);
        p = Rgb{v, v, v};
    }
    return f;
}

// A random scene blended 50/50 with white: synthetic haze.
inline Frame white_blend_frame(std::mt19937& rng, int w, int h, int index = 0) {
    Frame f = make_frame(w, h, {}, index);
    for (Rgb& p : f.samples)
        p = Rgb{std::uint8_t((rand_byte(rng) + 255) / 2), std::uint8_t((rand_byte(rng) + 255) / 2),
                std::uint8_t((rand_byte(rng) + 255) / 2)};
    return f;
}

inline Frame primaries_frame(int w, int h, int index = 0) {
    Frame f = make_frame(w, h, {}, index);
    static constexpr Rgb kPrimaries[3] = {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}};
    for (std::size_t i = 0; i < f.samples.size(); ++i) f.samples[i] = kPrimaries[i % 3];
    return f;
}

// Smooth dark texture panned horizontally by `step` pixels per frame index.
// Sampling the analytic pattern on a shifted integer grid makes consecutive
// frames exact translations of each other, quantization included.
inline Frame pan_frame(int w, int h, int index, int step) {
    Frame f = make_frame(w, h, {}, index);
    constexpr double tau = 2.0 * std::numbers::pi;
    for (int y = 0; y < h; ++y) {
        const double wy = 0.5 + 0.5 * std::cos(tau * y / 41.0);
        for (int x = 0; x < w; ++x) {
            const double gx = double(x + index * step);
            const double wx = 0.5 + 0.5 * std::sin(tau * gx / 37.0);
            const double wx2 = 0.5 + 0.5 * std::sin(tau * (gx + 7.0) / 53.0);
            f.at(x, y) = Rgb{std::uint8_t(std::lround(12.0 + 48.0 * wx * wy)),
                             std::uint8_t(std::lround(10.0 + 44.0 * wx2 * wy)),
                             std::uint8_t(std::lround(8.0 + 40.0 * wx * (1.0 - wy)))};
        }
    }
    return f;
}

inline std::vector<Frame> pan_sequence(int w, int h, int count, int step) {
    std::vector<Frame> frames;
    frames.reserve(std::size_t(count));
    for (int i = 0; i < count; ++i) frames.push_back(pan_frame(w, h, i, step));
    return frames;
}

// ---- oracles ----

inline TransmissionMap naive_transmission(const Frame& f, const Airlight& a,
                                          const DehazeConfig& cfg) {
    TransmissionMap tm;
    tm.width = f.width;
    tm.height = f.height;
    tm.t.resize(f.pixel_count());
    const int r = cfg.window_radius;
    for (int y = 0; y < f.height; ++y) {
        for (int x = 0; x < f.width; ++x) {
            double m = std::numeric_limits<double>::infinity();
            for (int yy = std::max(0, y - r); yy <= std::min(f.height - 1, y + r); ++yy) {
                for (int xx = std::max(0, x - r); xx <= std::min(f.width - 1, x + r); ++xx) {
                    const Rgb& p = f.at(xx, yy);
                    m = std::min(m, double(p.r) / a.r);
                    m = std::min(m, double(p.g) / a.g);
                    m = std::min(m, double(p.b) / a.b);
                }
            }
            tm.t[std::size_t(y) * f.width + x] =
                std::clamp(1.0 - cfg.omega * m, cfg.t_floor, 1.0);
        }
    }
    return tm;
}

// Two-stage selection by stable sort.
inline Airlight naive_airlight(const Frame& f, const DehazeConfig& cfg) {
    std::vector<std::size_t> order(f.pixel_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto minc = [&](std::size_t i) {
        const Rgb& p = f.samples[i];
        return std::min({p.r, p.g, p.b});
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return minc(a) > minc(b); });
    const std::size_t n = std::min<std::size_t>(std::size_t(cfg.airlight_candidates),
                                                order.size());
    int best_sum = -1;
    std::size_t best_idx = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Rgb& p = f.samples[order[k]];
        const int sum = int(p.r) + int(p.g) + int(p.b);
        if (sum > best_sum || (sum == best_sum && order[k] < best_idx)) {
            best_sum = sum;
            best_idx = order[k];
        }
    }
    const Rgb& p = f.samples[best_idx];
    return Airlight{std::max(1.0, double(p.r)), std::max(1.0, double(p.g)),
                    std::max(1.0, double(p.b))};
}

inline std::int64_t naive_mask_sad(const Frame& cur, int cx, int cy, const Frame& ref, int rx,
                                   int ry) {
    std::int64_t sum = 0;
    for (const auto& [px, py] : sad_pattern()) {
        const Rgb& a = cur.at(cx + px, cy + py);
        const Rgb& b = ref.at(rx + px, ry + py);
        sum += std::abs(int(std::min({a.r, a.g, a.b})) - int(std::min({b.r, b.g, b.b})));
    }
    return sum;
}

// Exhaustive search over the clamped +-range window; first minimum wins in
// (dy, dx) raster order.
inline SearchResult full_search(const Frame& cur, int bx, int by, const Frame& ref, int range) {
    const int bs = AccelConfig::block_size;
    const int x0 = bx * bs, y0 = by * bs;
    SearchResult best{{0, 0}, std::numeric_limits<std::int64_t>::max()};
    for (int dy = std::max(-range, -y0); dy <= std::min(range, cur.height - bs - y0); ++dy) {
        for (int dx = std::max(-range, -x0); dx <= std::min(range, cur.width - bs - x0); ++dx) {
            const std::int64_t s = naive_mask_sad(cur, x0, y0, ref, x0 + dx, y0 + dy);
            if (s < best.sad) best = SearchResult{{dx, dy}, s};
        }
    }
    return best;
}

inline double naive_psnr_db(const Frame& a, const Frame& b) {
    double sq = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < a.height; ++y) {
        for (int x = 0; x < a.width; ++x) {
            const Rgb& pa = a.at(x, y);
            const Rgb& pb = b.at(x, y);
            const double dr = double(pa.r) - double(pb.r);
            const double dg = double(pa.g) - double(pb.g);
            const double db = double(pa.b) - double(pb.b);
            sq += dr * dr + dg * dg + db * db;
            n += 3;
        }
    }
    return 10.0 * std::log10(255.0 * 255.0 / (sq / double(n)));
}

// ---- filesystem helpers ----

inline std::filesystem::path temp_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("clearvid_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), std::streamsize(bytes.size()));
}

}  // namespace testutil
