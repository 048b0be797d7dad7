#pragma once

#include "clearvid/dehaze.hpp"
#include "clearvid/frame.hpp"
#include "clearvid/motion.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>

namespace clearvid {

/// Eight equal intervals over [0, 255]: 0-31, 32-63, ..., 224-255.
struct Histogram {
    static constexpr int kBins = 8;
    std::array<int, kBins + 1> bin_edges = {0, 32, 64, 96, 128, 160, 192, 224, 256};
    std::array<std::uint64_t, kBins> counts{};

    void add(std::uint8_t value) { ++counts[std::size_t(value) / 32]; }
    std::uint64_t total() const;
};

struct ChiSquareResult {
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    bool consistent_at_p05 = false;
};

Histogram min_channel_histogram(std::span<const Frame> frames);

/// Upper critical value at p = 0.05 for df in 1..10.
double chi_square_critical_p05(int df);

/// Pearson statistic with the expected counts scaled to the observed total.
/// Bins with zero expected count are excluded and reduce the df. Throws
/// std::invalid_argument when no usable bins remain.
ChiSquareResult chi_square(const Histogram& observed, const Histogram& expected);

/// MSE over all channels of all pixels; nullopt means the frames are
/// identical (PSNR would be infinite).
std::optional<double> psnr(const Frame& a, const Frame& b);

/// Relative differences |t_acc - t_fw| / max(t_fw, t_floor) over the pixels
/// of skipped blocks, binned at 1% granularity (last bin collects >= 100%).
struct RelDiffHistogram {
    std::array<std::uint64_t, 101> counts{};
    std::uint64_t total = 0;

    bool empty() const { return total == 0; }
    /// Fraction of samples with relative difference strictly below `ratio`
    /// (a multiple of 0.01). Zero when the histogram is empty.
    double fraction_below(double ratio) const;
    RelDiffHistogram& operator+=(const RelDiffHistogram& o);
};

RelDiffHistogram tmap_diff_stats(const TransmissionMap& frame_wise,
                                 const TransmissionMap& accelerated, const MotionField& field,
                                 double t_floor = 0.1);

}  // namespace clearvid
