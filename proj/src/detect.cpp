#include "clearvid/detect.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace clearvid {

const char* to_string(ImpairmentClass c) {
    switch (c) {
        case ImpairmentClass::Hazy: return "haze";
        case ImpairmentClass::InvertedHazy: return "lowlight";
        case ImpairmentClass::Normal: return "normal";
    }
    return "?";
}

bool pixel_is_hazy(const HsvPixel& p, const DetectConfig& cfg) {
    return cfg.s_lo <= p.s && p.s <= cfg.s_hi && cfg.v_lo <= p.v && p.v <= cfg.v_hi;
}

double hazy_fraction(const Frame& f, const DetectConfig& cfg, bool inverted) {
    std::size_t hazy = 0;
    for (const Rgb& px : f.samples) {
        Rgb p = px;
        if (inverted)
            p = Rgb{std::uint8_t(255 - p.r), std::uint8_t(255 - p.g), std::uint8_t(255 - p.b)};
        if (pixel_is_hazy(rgb_to_hsv(p), cfg)) ++hazy;
    }
    return double(hazy) / double(f.pixel_count());
}

ImpairmentClass classify_frame(const Frame& f, const DetectConfig& cfg) {
    if (hazy_fraction(f, cfg) > cfg.hazy_fraction_threshold) return ImpairmentClass::Hazy;
    if (hazy_fraction(f, cfg, /*inverted=*/true) > cfg.hazy_fraction_threshold)
        return ImpairmentClass::InvertedHazy;
    return ImpairmentClass::Normal;
}

bool scene_changed(const Frame& prev, const Frame& cur, const DetectConfig& cfg) {
    if (!prev.same_dims(cur))
        throw std::invalid_argument("scene_changed: frame dimensions differ");
    const GrayMap a = min_channel_map(prev);
    const GrayMap b = min_channel_map(cur);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        sum += std::uint64_t(std::abs(int(a.values[i]) - int(b.values[i])));
    const double mad = double(sum) / double(a.values.size());
    return mad > cfg.scene_change_mad_threshold;
}

}  // namespace clearvid
