#include "clearvid/motion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace clearvid {

namespace {

constexpr int kBlock = AccelConfig::block_size;

inline int min_channel(const Rgb& p) { return std::min({p.r, p.g, p.b}); }

inline int manhattan(MotionVector v) { return std::abs(v.dx) + std::abs(v.dy); }

void require_block_inside(const Frame& f, int x, int y, const char* what) {
    if (x < 0 || y < 0 || x + kBlock > f.width || y + kBlock > f.height)
        throw std::invalid_argument(std::string(what) + ": 16x16 block out of bounds");
}

}  // namespace

const SadPattern& sad_pattern() {
    static const SadPattern pattern = [] {
        SadPattern p{};
        std::size_t n = 0;
        for (int x = 0; x < kBlock; ++x) p[n++] = {x, 0};
        for (int y = 1; y < kBlock - 1; ++y) {
            p[n++] = {0, y};
            p[n++] = {kBlock - 1, y};
        }
        for (int x = 0; x < kBlock; ++x) p[n++] = {x, kBlock - 1};
        return p;
    }();
    return pattern;
}

std::uint64_t& sad_abs_diff_count() {
    thread_local std::uint64_t count = 0;
    return count;
}

std::int64_t subsampled_sad(const Frame& cur, int cur_x, int cur_y, const Frame& ref, int ref_x,
                            int ref_y) {
    require_block_inside(cur, cur_x, cur_y, "subsampled_sad(cur)");
    require_block_inside(ref, ref_x, ref_y, "subsampled_sad(ref)");
    std::uint64_t& count = sad_abs_diff_count();
    std::int64_t sum = 0;
    for (const auto& [px, py] : sad_pattern()) {
        const int a = min_channel(cur.at(cur_x + px, cur_y + py));
        const int b = min_channel(ref.at(ref_x + px, ref_y + py));
        sum += std::abs(a - b);
        ++count;
    }
    return sum;
}

SearchResult motion_search(const Frame& cur, int bx, int by, const Frame& ref,
                           const std::vector<MotionVector>& predictors, const AccelConfig& cfg) {
    if (!cur.same_dims(ref))
        throw std::invalid_argument("motion_search: frame dimensions differ");
    const int x0 = bx * kBlock;
    const int y0 = by * kBlock;
    require_block_inside(cur, x0, y0, "motion_search");

    const int lo_dx = std::max(-cfg.search_range, -x0);
    const int hi_dx = std::min(cfg.search_range, cur.width - kBlock - x0);
    const int lo_dy = std::max(-cfg.search_range, -y0);
    const int hi_dy = std::min(cfg.search_range, cur.height - kBlock - y0);

    SearchResult best{MotionVector{0, 0},
                      subsampled_sad(cur, x0, y0, ref, x0, y0)};
    if (best.sad <= cfg.sad_threshold) return best;

    auto consider = [&](MotionVector v) {
        const std::int64_t s = subsampled_sad(cur, x0, y0, ref, x0 + v.dx, y0 + v.dy);
        if (s < best.sad || (s == best.sad && manhattan(v) < manhattan(best.mv)))
            best = SearchResult{v, s};
        return best.sad <= cfg.sad_threshold;
    };

    for (const MotionVector& p : predictors) {
        const MotionVector v{std::clamp(p.dx, lo_dx, hi_dx), std::clamp(p.dy, lo_dy, hi_dy)};
        if (v == best.mv) continue;
        if (consider(v)) return best;
    }

    // Small-diamond descent, step 1, until no axial neighbor improves.
    static constexpr MotionVector kAxial[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (int iter = 0; iter < 16; ++iter) {
        const MotionVector center = best.mv;
        for (const MotionVector& d : kAxial) {
            const MotionVector v{center.dx + d.dx, center.dy + d.dy};
            if (v.dx < lo_dx || v.dx > hi_dx || v.dy < lo_dy || v.dy > hi_dy) continue;
            if (consider(v)) return best;
        }
        if (best.mv == center) break;
    }
    return best;
}

PropagateResult propagate_tmap(const Frame& cur, const Frame& ref, const TransmissionMap& ref_tm,
                               const MotionField* prev_field, const Airlight& a,
                               const AccelConfig& cfg_a, const DehazeConfig& cfg_d) {
    if (!cur.same_dims(ref))
        throw std::invalid_argument("propagate_tmap: frame dimensions differ");
    if (ref_tm.width != ref.width || ref_tm.height != ref.height)
        throw std::invalid_argument("propagate_tmap: reference map dimensions differ");

    const int w = cur.width, h = cur.height;
    const int bxs = w / kBlock;
    const int bys = h / kBlock;
    if (prev_field && (prev_field->blocks_x != bxs || prev_field->blocks_y != bys))
        throw std::invalid_argument("propagate_tmap: previous field block grid differs");

    MotionField field;
    field.blocks_x = bxs;
    field.blocks_y = bys;
    field.entries.resize(std::size_t(bxs) * bys);

    TransmissionMap out;
    out.width = w;
    out.height = h;
    out.t.resize(std::size_t(w) * h);

    const TransmissionEstimator estimator(a, cfg_d);

    for (int by = 0; by < bys; ++by) {
        for (int bx = 0; bx < bxs; ++bx) {
            std::vector<MotionVector> predictors;
            if (bx > 0) predictors.push_back(field.at(bx - 1, by).mv);
            if (by > 0) predictors.push_back(field.at(bx, by - 1).mv);
            if (by > 0 && bx + 1 < bxs) predictors.push_back(field.at(bx + 1, by - 1).mv);
            if (prev_field) predictors.push_back(prev_field->at(bx, by).mv);

            const SearchResult res = motion_search(cur, bx, by, ref, predictors, cfg_a);
            BlockMatch& m = field.entries[std::size_t(by) * bxs + bx];
            m.mv = res.mv;
            m.sad = res.sad;
            m.skipped = res.sad <= cfg_a.sad_threshold;

            const int x0 = bx * kBlock;
            const int y0 = by * kBlock;
            if (m.skipped) {
                for (int y = 0; y < kBlock; ++y) {
                    const int sy = std::clamp(y0 + y + m.mv.dy, 0, h - 1);
                    for (int x = 0; x < kBlock; ++x) {
                        const int sx = std::clamp(x0 + x + m.mv.dx, 0, w - 1);
                        out.t[std::size_t(y0 + y) * w + (x0 + x)] =
                            ref_tm.t[std::size_t(sy) * w + sx];
                    }
                }
            } else {
                estimator.fill_rect(cur, x0, y0, kBlock, kBlock, out);
            }
        }
    }

    // Partial edge strips.
    if (bxs * kBlock < w) estimator.fill_rect(cur, bxs * kBlock, 0, w - bxs * kBlock, h, out);
    if (bys * kBlock < h)
        estimator.fill_rect(cur, 0, bys * kBlock, bxs * kBlock, h - bys * kBlock, out);

    return PropagateResult{std::move(out), std::move(field)};
}

}  // namespace clearvid
