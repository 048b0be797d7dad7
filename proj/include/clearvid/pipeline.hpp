#pragma once

#include "clearvid/detect.hpp"
#include "clearvid/dehaze.hpp"
#include "clearvid/motion.hpp"
#include "clearvid/stats.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace clearvid {

enum class Mode { FrameWise, Accelerated };

const char* to_string(Mode m);

struct GopPlan {
    int start_index = 0;
    int length = 0;
    ImpairmentClass impairment = ImpairmentClass::Normal;
    std::optional<Airlight> airlight;  // engaged for Hazy / InvertedHazy GOPs
    bool triggered_by_scene_change = false;
};

struct PipelineConfig {
    int max_gop_len = 30;
    Mode mode = Mode::FrameWise;
    DetectConfig detect;
    DehazeConfig dehaze;
    AccelConfig accel;
    std::optional<ImpairmentClass> force_class;  // bypass automatic detection
};

struct FrameRecord {
    int frame_index = 0;
    int gop_index = 0;
    ImpairmentClass impairment = ImpairmentClass::Normal;
    Mode mode = Mode::FrameWise;
    double ms = 0.0;
    std::optional<double> skip_ratio;  // accelerated P-frames only
};

struct GopRecord {
    int gop_index = 0;
    int start_index = 0;
    int length = 0;
    ImpairmentClass impairment = ImpairmentClass::Normal;
    std::optional<Airlight> airlight;
    bool scene_change = false;
};

struct RunReport {
    std::vector<FrameRecord> frames;
    std::vector<GopRecord> gops;

    double mean_ms() const;
};

using TmapObserver = std::function<void(int frame_index, const TransmissionMap&)>;

/// Splits the sequence at scene changes and at the GOP length cap, and tags
/// each GOP with the class of its first frame and the blended airlight it
/// will be enhanced with. Throws std::invalid_argument on an empty sequence
/// or mixed dimensions.
std::vector<GopPlan> plan_gops(std::span<const Frame> frames, const PipelineConfig& cfg);

struct GopResult {
    std::vector<Frame> frames;
    std::optional<Airlight> airlight;  // value carried into the next GOP
    std::vector<MotionField> fields;   // one per accelerated P-frame
};

/// Enhances one GOP. `prev_airlight` is the value carried from the previous
/// GOP of the same class (already cleared by the caller across scene changes
/// and class switches). Normal GOPs pass frames and airlight through.
GopResult enhance_gop(std::span<const Frame> frames, const GopPlan& plan,
                      const std::optional<Airlight>& prev_airlight, const PipelineConfig& cfg,
                      RunReport* report = nullptr, const TmapObserver& observer = {});

struct EnhanceResult {
    std::vector<Frame> frames;
    RunReport report;
};

EnhanceResult enhance_sequence(std::span<const Frame> frames, const PipelineConfig& cfg,
                               const TmapObserver& observer = {});

/// Runs both modes over the same input and accumulates the relative
/// transmission differences over skipped blocks.
RelDiffHistogram compare_tmap_modes(std::span<const Frame> frames, const PipelineConfig& cfg);

}  // namespace clearvid
