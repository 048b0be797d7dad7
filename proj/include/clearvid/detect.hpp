#pragma once

#include "clearvid/frame.hpp"

namespace clearvid {

enum class ImpairmentClass { Hazy, InvertedHazy, Normal };

const char* to_string(ImpairmentClass c);

struct DetectConfig {
    // Hazy-pixel ranges on S and V, inclusive at both ends.
    int s_lo = 0;
    int s_hi = 130;
    int v_lo = 90;
    int v_hi = 240;
    // A frame is hazy when strictly more than this fraction of pixels pass.
    double hazy_fraction_threshold = 0.60;
    // Mean |delta| per pixel between consecutive min-channel maps.
    double scene_change_mad_threshold = 30.0;
};

bool pixel_is_hazy(const HsvPixel& p, const DetectConfig& cfg);

/// Fraction of pixels whose S and V fall inside the hazy ranges. With
/// `inverted`, the test runs on the pixel-wise inversion of `f` without
/// materializing the inverted frame.
double hazy_fraction(const Frame& f, const DetectConfig& cfg, bool inverted = false);

/// Hazy if the frame itself passes the fraction test, InvertedHazy if only
/// its inversion does (low-light / high-dynamic-range content), else Normal.
ImpairmentClass classify_frame(const Frame& f, const DetectConfig& cfg);

bool scene_changed(const Frame& prev, const Frame& cur, const DetectConfig& cfg);

}  // namespace clearvid
