#pragma once

#include "clearvid/frame.hpp"

#include <array>
#include <vector>

namespace clearvid {

/// Global atmospheric light, one value per channel, kept in [1, 255].
struct Airlight {
    double r = 255.0;
    double g = 255.0;
    double b = 255.0;
    friend bool operator==(const Airlight&, const Airlight&) = default;
};

struct TransmissionMap {
    int width = 0;
    int height = 0;
    std::vector<double> t;

    double at(int x, int y) const { return t[std::size_t(y) * width + x]; }
    friend bool operator==(const TransmissionMap&, const TransmissionMap&) = default;
};

struct DehazeConfig {
    double omega = 0.8;
    int window_radius = 4;  // 9x9 window
    int airlight_candidates = 100;
    double blend_old = 0.4;
    double blend_new = 0.6;
    double t_floor = 0.1;
    bool use_multiplier = false;  // on for inverted-domain (low-light / HDR) input
};

/// Throws std::invalid_argument on out-of-range settings.
void validate(const DehazeConfig& cfg);

/// Picks the candidate pixels with the highest min-channel values (raster
/// order breaks ties, earliest first), then returns the candidate with the
/// highest r+g+b sum. Channels are floored at 1.
Airlight estimate_airlight(const Frame& f, const DehazeConfig& cfg);

/// Per channel: prev * blend_old + candidate * blend_new.
Airlight blend_airlight(const Airlight& prev, const Airlight& candidate, const DehazeConfig& cfg);

/// Transmission estimation bound to one airlight. Per-channel ratio tables
/// are built once; the full-frame path runs a separable sliding-window min,
/// the rectangle path a direct windowed min. Both produce identical values.
class TransmissionEstimator {
public:
    TransmissionEstimator(const Airlight& a, const DehazeConfig& cfg);

    TransmissionMap full_map(const Frame& f) const;

    /// Computes t for one rectangle of `f` into `out` (sized for the whole
    /// frame). Windows read frame pixels outside the rectangle.
    void fill_rect(const Frame& f, int x0, int y0, int w, int h, TransmissionMap& out) const;

private:
    double min_ratio(const Rgb& p) const;
    double to_transmission(double window_min) const;

    DehazeConfig cfg_;
    std::array<std::array<double, 256>, 3> ratio_;  // channel value / airlight channel
};

TransmissionMap transmission_map(const Frame& f, const Airlight& a, const DehazeConfig& cfg);

/// Adaptive divisor multiplier: 2t on (0, 0.5], -2t^2 + 8 - 3/t on (0.5, 1].
/// Throws std::domain_error outside (0, 1].
double boost_multiplier(double t);

/// Per channel: (value - A) / d + A, where d is t(x), or
/// max(boost_multiplier(t) * t, t_floor) when the multiplier is enabled.
/// Results are rounded half away from zero and clamped to [0, 255].
Frame recover_frame(const Frame& f, const Airlight& a, const TransmissionMap& tm,
                    const DehazeConfig& cfg);

}  // namespace clearvid
