#pragma once

#include "clearvid/dehaze.hpp"
#include "clearvid/frame.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace clearvid {

struct MotionVector {
    int dx = 0;
    int dy = 0;
    friend bool operator==(const MotionVector&, const MotionVector&) = default;
};

struct BlockMatch {
    MotionVector mv;
    std::int64_t sad = 0;
    bool skipped = false;
};

/// Per-frame motion field over the full 16x16 blocks. Partial blocks at the
/// right/bottom edges are outside the field and always recomputed.
struct MotionField {
    int blocks_x = 0;
    int blocks_y = 0;
    std::vector<BlockMatch> entries;

    const BlockMatch& at(int bx, int by) const {
        return entries[std::size_t(by) * blocks_x + bx];
    }
};

struct AccelConfig {
    static constexpr int block_size = 16;
    int search_range = 16;
    // Mean |delta| of 4 over the 60 sampled pixels.
    std::int64_t sad_threshold = 240;
};

/// The fixed 60-pixel subsampling mask: the perimeter of a 16x16 block.
using SadPattern = std::array<std::pair<int, int>, 60>;
const SadPattern& sad_pattern();

/// Running count of absolute differences evaluated by subsampled_sad
/// (cost instrumentation; thread-local).
std::uint64_t& sad_abs_diff_count();

/// SAD over the subsampling mask, on min-channel intensities. Both 16x16
/// blocks must lie fully inside their frames.
std::int64_t subsampled_sad(const Frame& cur, int cur_x, int cur_y, const Frame& ref, int ref_x,
                            int ref_y);

struct SearchResult {
    MotionVector mv;
    std::int64_t sad = 0;
};

/// Evaluates the zero vector and the predictors (clamped in-bounds and to
/// the search range), then refines with a step-1 diamond descent. Ties favor
/// the shorter vector, then the earlier evaluation. May return early once
/// the SAD falls at or below the skip threshold.
SearchResult motion_search(const Frame& cur, int bx, int by, const Frame& ref,
                           const std::vector<MotionVector>& predictors, const AccelConfig& cfg);

struct PropagateResult {
    TransmissionMap tmap;
    MotionField field;
};

/// Builds the transmission map of `cur` by block-wise reuse of `ref_tm`:
/// blocks whose best match SAD is at or below the threshold copy the
/// motion-displaced reference values; all other blocks (and partial edge
/// blocks) are recomputed from `cur`. `prev_field` seeds the co-located
/// predictor and may be null.
PropagateResult propagate_tmap(const Frame& cur, const Frame& ref, const TransmissionMap& ref_tm,
                               const MotionField* prev_field, const Airlight& a,
                               const AccelConfig& cfg_a, const DehazeConfig& cfg_d);

}  // namespace clearvid
