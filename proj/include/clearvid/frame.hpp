#pragma once

#include <cstdint>
#include <vector>

namespace clearvid {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit RGB raster, row-major, top-left origin.
struct Frame {
    int width = 0;
    int height = 0;
    int index = 0;  // frame number within its sequence
    std::vector<Rgb> samples;

    const Rgb& at(int x, int y) const { return samples[std::size_t(y) * width + x]; }
    Rgb& at(int x, int y) { return samples[std::size_t(y) * width + x]; }
    std::size_t pixel_count() const { return samples.size(); }
    bool same_dims(const Frame& o) const { return width == o.width && height == o.height; }
    friend bool operator==(const Frame&, const Frame&) = default;
};

struct GrayMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values;

    std::uint8_t at(int x, int y) const { return values[std::size_t(y) * width + x]; }
    friend bool operator==(const GrayMap&, const GrayMap&) = default;
};

/// H is informational only (detection reads S and V).
struct HsvPixel {
    float h = 0.0f;      // degrees in [0, 360)
    std::uint8_t s = 0;  // 0..255
    std::uint8_t v = 0;  // 0..255
};

// Anything smaller cannot hold a single 16x16 macroblock.
inline constexpr int kMinFrameDim = 16;

/// Throws std::invalid_argument if the dimensions cannot hold a macroblock.
Frame make_frame(int width, int height, Rgb fill = {}, int index = 0);

Frame invert_frame(const Frame& f);
GrayMap min_channel_map(const Frame& f);
HsvPixel rgb_to_hsv(Rgb p);

/// Round half away from zero, then clamp to [0, 255].
std::uint8_t to_byte(double value);

}  // namespace clearvid
