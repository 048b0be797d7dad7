#include "clearvid/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace clearvid {

std::uint64_t Histogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t(0));
}

Histogram min_channel_histogram(std::span<const Frame> frames) {
    if (frames.empty()) throw std::invalid_argument("min_channel_histogram: no frames");
    Histogram h;
    for (const Frame& f : frames)
        for (const Rgb& p : f.samples) h.add(std::min({p.r, p.g, p.b}));
    return h;
}

double chi_square_critical_p05(int df) {
    static constexpr double kCritical[10] = {3.84, 5.99, 7.81, 9.49,  11.07,
                                             12.59, 14.07, 15.51, 16.92, 18.31};
    if (df < 1 || df > 10)
        throw std::invalid_argument("chi_square_critical_p05: df must be in 1..10");
    return kCritical[df - 1];
}

ChiSquareResult chi_square(const Histogram& observed, const Histogram& expected) {
    const std::uint64_t o_total = observed.total();
    const std::uint64_t e_total = expected.total();
    if (o_total == 0 || e_total == 0)
        throw std::invalid_argument("chi_square: empty histogram");

    const double scale = double(o_total) / double(e_total);
    double statistic = 0.0;
    int included = 0;
    for (int i = 0; i < Histogram::kBins; ++i) {
        if (expected.counts[std::size_t(i)] == 0) continue;
        const double e = double(expected.counts[std::size_t(i)]) * scale;
        const double d = double(observed.counts[std::size_t(i)]) - e;
        statistic += d * d / e;
        ++included;
    }
    if (included < 2)
        throw std::invalid_argument("chi_square: fewer than two usable bins");

    ChiSquareResult res;
    res.statistic = statistic;
    res.degrees_of_freedom = included - 1;
    res.consistent_at_p05 = statistic < chi_square_critical_p05(res.degrees_of_freedom);
    return res;
}

std::optional<double> psnr(const Frame& a, const Frame& b) {
    if (!a.same_dims(b)) throw std::invalid_argument("psnr: frame dimensions differ");
    std::uint64_t sq = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const int dr = int(a.samples[i].r) - int(b.samples[i].r);
        const int dg = int(a.samples[i].g) - int(b.samples[i].g);
        const int db = int(a.samples[i].b) - int(b.samples[i].b);
        sq += std::uint64_t(dr * dr) + std::uint64_t(dg * dg) + std::uint64_t(db * db);
    }
    if (sq == 0) return std::nullopt;
    const double mse = double(sq) / (3.0 * double(a.pixel_count()));
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double RelDiffHistogram::fraction_below(double ratio) const {
    if (total == 0) return 0.0;
    const int k = std::clamp(int(std::floor(ratio * 100.0 + 1e-9)), 0, 101);
    std::uint64_t below = 0;
    for (int i = 0; i < k; ++i) below += counts[std::size_t(i)];
    return double(below) / double(total);
}

RelDiffHistogram& RelDiffHistogram::operator+=(const RelDiffHistogram& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    total += o.total;
    return *this;
}

RelDiffHistogram tmap_diff_stats(const TransmissionMap& frame_wise,
                                 const TransmissionMap& accelerated, const MotionField& field,
                                 double t_floor) {
    if (frame_wise.width != accelerated.width || frame_wise.height != accelerated.height)
        throw std::invalid_argument("tmap_diff_stats: map dimensions differ");

    constexpr int bs = AccelConfig::block_size;
    RelDiffHistogram h;
    for (int by = 0; by < field.blocks_y; ++by) {
        for (int bx = 0; bx < field.blocks_x; ++bx) {
            if (!field.at(bx, by).skipped) continue;
            for (int y = by * bs; y < (by + 1) * bs; ++y) {
                for (int x = bx * bs; x < (bx + 1) * bs; ++x) {
                    const double fw = frame_wise.at(x, y);
                    const double rel =
                        std::abs(accelerated.at(x, y) - fw) / std::max(fw, t_floor);
                    ++h.counts[std::size_t(std::min(100, int(rel * 100.0)))];
                    ++h.total;
                }
            }
        }
    }
    return h;
}

}  // namespace clearvid
