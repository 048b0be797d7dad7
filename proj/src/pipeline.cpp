#include "clearvid/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace clearvid {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Airlight resolve_gop_airlight(const Frame& first_working, const std::optional<Airlight>& prev,
                              const DehazeConfig& cfg) {
    const Airlight candidate = estimate_airlight(first_working, cfg);
    return prev ? blend_airlight(*prev, candidate, cfg) : candidate;
}

// Carries the blended airlight across GOPs. Memory clears on scene changes
// and when the impairment class switches; Normal GOPs pass it through.
struct AirlightThread {
    std::optional<Airlight> value;
    std::optional<ImpairmentClass> source_class;

    std::optional<Airlight> seed_for(ImpairmentClass cls, bool scene_change) {
        if (scene_change) {
            value.reset();
            source_class.reset();
        }
        if (cls == ImpairmentClass::Normal) return std::nullopt;
        if (value && source_class == cls) return value;
        return std::nullopt;
    }

    void update(ImpairmentClass cls, const std::optional<Airlight>& a) {
        if (cls == ImpairmentClass::Normal) return;
        value = a;
        source_class = cls;
    }
};

}  // namespace

const char* to_string(Mode m) {
    return m == Mode::FrameWise ? "framewise" : "accel";
}

double RunReport::mean_ms() const {
    if (frames.empty()) return 0.0;
    double sum = 0.0;
    for (const FrameRecord& r : frames) sum += r.ms;
    return sum / double(frames.size());
}

std::vector<GopPlan> plan_gops(std::span<const Frame> frames, const PipelineConfig& cfg) {
    if (frames.empty()) throw std::invalid_argument("plan_gops: empty sequence");
    for (const Frame& f : frames)
        if (!f.same_dims(frames[0]))
            throw std::invalid_argument("plan_gops: mixed frame dimensions");
    if (cfg.max_gop_len < 1) throw std::invalid_argument("plan_gops: max_gop_len must be >= 1");

    struct Segment {
        int start;
        int length;
        bool scene;
    };
    std::vector<Segment> segments;
    int start = 0;
    bool scene = false;
    const int n = int(frames.size());
    for (int i = 1; i < n; ++i) {
        const bool cut_scene = scene_changed(frames[std::size_t(i) - 1], frames[std::size_t(i)],
                                             cfg.detect);
        if (cut_scene || i - start >= cfg.max_gop_len) {
            segments.push_back({start, i - start, scene});
            start = i;
            scene = cut_scene;
        }
    }
    segments.push_back({start, n - start, scene});

    std::vector<GopPlan> plans;
    plans.reserve(segments.size());
    AirlightThread thread;
    for (const Segment& seg : segments) {
        GopPlan plan;
        plan.start_index = seg.start;
        plan.length = seg.length;
        plan.triggered_by_scene_change = seg.scene;
        plan.impairment = cfg.force_class ? *cfg.force_class
                                          : classify_frame(frames[std::size_t(seg.start)], cfg.detect);
        const auto seed = thread.seed_for(plan.impairment, seg.scene);
        if (plan.impairment != ImpairmentClass::Normal) {
            const Frame& first = frames[std::size_t(seg.start)];
            if (plan.impairment == ImpairmentClass::InvertedHazy) {
                plan.airlight = resolve_gop_airlight(invert_frame(first), seed, cfg.dehaze);
            } else {
                plan.airlight = resolve_gop_airlight(first, seed, cfg.dehaze);
            }
            thread.update(plan.impairment, plan.airlight);
        }
        plans.push_back(plan);
    }
    return plans;
}

GopResult enhance_gop(std::span<const Frame> frames, const GopPlan& plan,
                      const std::optional<Airlight>& prev_airlight, const PipelineConfig& cfg,
                      RunReport* report, const TmapObserver& observer) {
    if (frames.empty() || int(frames.size()) != plan.length)
        throw std::invalid_argument("enhance_gop: slice does not match plan");

    GopResult out;
    out.frames.reserve(frames.size());

    auto record = [&](int frame_index, double ms, std::optional<double> skip_ratio) {
        if (!report) return;
        report->frames.push_back(
            {frame_index, 0, plan.impairment, cfg.mode, ms, skip_ratio});
    };

    if (plan.impairment == ImpairmentClass::Normal) {
        for (const Frame& f : frames) {
            const auto start = Clock::now();
            out.frames.push_back(f);
            record(f.index, ms_since(start), std::nullopt);
        }
        out.airlight = prev_airlight;
        return out;
    }

    const bool inverted = plan.impairment == ImpairmentClass::InvertedHazy;
    DehazeConfig dc = cfg.dehaze;
    dc.use_multiplier = inverted;

    std::optional<Airlight> air;
    std::optional<TransmissionEstimator> estimator;
    Frame prev_working;
    TransmissionMap prev_t;
    std::optional<MotionField> prev_field;

    for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto start = Clock::now();
        Frame working = inverted ? invert_frame(frames[i]) : frames[i];
        std::optional<double> skip_ratio;
        TransmissionMap t;

        if (i == 0) {
            const Airlight candidate = estimate_airlight(working, dc);
            air = prev_airlight ? blend_airlight(*prev_airlight, candidate, dc) : candidate;
            estimator.emplace(*air, dc);
            t = estimator->full_map(working);
        } else if (cfg.mode == Mode::FrameWise) {
            t = estimator->full_map(working);
        } else {
            PropagateResult pr =
                propagate_tmap(working, prev_working, prev_t,
                               prev_field ? &*prev_field : nullptr, *air, cfg.accel, dc);
            t = std::move(pr.tmap);
            const std::size_t skipped =
                std::size_t(std::count_if(pr.field.entries.begin(), pr.field.entries.end(),
                                          [](const BlockMatch& b) { return b.skipped; }));
            skip_ratio = pr.field.entries.empty()
                             ? 0.0
                             : double(skipped) / double(pr.field.entries.size());
            prev_field = std::move(pr.field);
            out.fields.push_back(*prev_field);
        }

        Frame recovered = recover_frame(working, *air, t, dc);
        out.frames.push_back(inverted ? invert_frame(recovered) : std::move(recovered));
        const double ms = ms_since(start);
        if (observer) observer(frames[i].index, t);
        record(frames[i].index, ms, skip_ratio);

        prev_working = std::move(working);
        prev_t = std::move(t);
    }

    out.airlight = air;
    return out;
}

EnhanceResult enhance_sequence(std::span<const Frame> frames, const PipelineConfig& cfg,
                               const TmapObserver& observer) {
    const std::vector<GopPlan> plans = plan_gops(frames, cfg);

    EnhanceResult res;
    res.frames.reserve(frames.size());
    AirlightThread thread;
    for (std::size_t gi = 0; gi < plans.size(); ++gi) {
        const GopPlan& plan = plans[gi];
        const auto seed = thread.seed_for(plan.impairment, plan.triggered_by_scene_change);
        const std::size_t first_row = res.report.frames.size();
        GopResult gr = enhance_gop(frames.subspan(std::size_t(plan.start_index),
                                                  std::size_t(plan.length)),
                                   plan, seed, cfg, &res.report, observer);
        for (std::size_t r = first_row; r < res.report.frames.size(); ++r)
            res.report.frames[r].gop_index = int(gi);
        thread.update(plan.impairment, gr.airlight);

        GopRecord rec;
        rec.gop_index = int(gi);
        rec.start_index = plan.start_index;
        rec.length = plan.length;
        rec.impairment = plan.impairment;
        if (plan.impairment != ImpairmentClass::Normal) rec.airlight = gr.airlight;
        rec.scene_change = plan.triggered_by_scene_change;
        res.report.gops.push_back(rec);

        for (Frame& f : gr.frames) res.frames.push_back(std::move(f));
    }
    return res;
}

RelDiffHistogram compare_tmap_modes(std::span<const Frame> frames, const PipelineConfig& cfg) {
    const std::vector<GopPlan> plans = plan_gops(frames, cfg);

    RelDiffHistogram acc;
    AirlightThread thread;
    for (const GopPlan& plan : plans) {
        const auto seed = thread.seed_for(plan.impairment, plan.triggered_by_scene_change);
        if (plan.impairment == ImpairmentClass::Normal) continue;
        const bool inverted = plan.impairment == ImpairmentClass::InvertedHazy;
        DehazeConfig dc = cfg.dehaze;
        dc.use_multiplier = inverted;

        const auto working_of = [&](int i) {
            const Frame& f = frames[std::size_t(plan.start_index + i)];
            return inverted ? invert_frame(f) : f;
        };

        Frame prev_working = working_of(0);
        const Airlight candidate = estimate_airlight(prev_working, dc);
        const Airlight air = seed ? blend_airlight(*seed, candidate, dc) : candidate;
        thread.update(plan.impairment, air);
        const TransmissionEstimator estimator(air, dc);

        TransmissionMap prev_acc = estimator.full_map(prev_working);
        std::optional<MotionField> prev_field;
        for (int i = 1; i < plan.length; ++i) {
            Frame working = working_of(i);
            const TransmissionMap frame_wise = estimator.full_map(working);
            PropagateResult pr =
                propagate_tmap(working, prev_working, prev_acc,
                               prev_field ? &*prev_field : nullptr, air, cfg.accel, dc);
            acc += tmap_diff_stats(frame_wise, pr.tmap, pr.field, dc.t_floor);
            prev_working = std::move(working);
            prev_acc = std::move(pr.tmap);
            prev_field = std::move(pr.field);
        }
    }
    return acc;
}

}  // namespace clearvid
