#include "clearvid/frame.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clearvid {

Frame make_frame(int width, int height, Rgb fill, int index) {
    if (width < kMinFrameDim || height < kMinFrameDim)
        throw std::invalid_argument("frame dimensions must be at least 16x16");
    Frame f;
    f.width = width;
    f.height = height;
    f.index = index;
    f.samples.assign(std::size_t(width) * height, fill);
    return f;
}

Frame invert_frame(const Frame& f) {
    Frame out = f;
    for (Rgb& p : out.samples) {
        p.r = std::uint8_t(255 - p.r);
        p.g = std::uint8_t(255 - p.g);
        p.b = std::uint8_t(255 - p.b);
    }
    return out;
}

GrayMap min_channel_map(const Frame& f) {
    GrayMap m;
    m.width = f.width;
    m.height = f.height;
    m.values.resize(f.samples.size());
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const Rgb& p = f.samples[i];
        m.values[i] = std::min({p.r, p.g, p.b});
    }
    return m;
}

HsvPixel rgb_to_hsv(Rgb p) {
    const int v = std::max({p.r, p.g, p.b});
    const int m = std::min({p.r, p.g, p.b});
    const int c = v - m;

    HsvPixel out;
    out.v = std::uint8_t(v);
    out.s = (v == 0) ? std::uint8_t(0) : std::uint8_t(std::lround(255.0 * c / v));

    if (c != 0) {
        double h;
        if (v == p.r)
            h = std::fmod((double(p.g) - double(p.b)) / c, 6.0);
        else if (v == p.g)
            h = (double(p.b) - double(p.r)) / c + 2.0;
        else
            h = (double(p.r) - double(p.g)) / c + 4.0;
        h *= 60.0;
        if (h < 0.0) h += 360.0;
        out.h = float(h);
    }
    return out;
}

std::uint8_t to_byte(double value) {
    const long r = std::lround(value);
    return std::uint8_t(std::clamp(r, 0L, 255L));
}

}  // namespace clearvid
