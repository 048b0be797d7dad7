#pragma once

#include "clearvid/frame.hpp"
#include "clearvid/pipeline.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

namespace clearvid {

/// Unusable input: missing files, malformed headers, unsupported formats,
/// inconsistent frames. The CLI maps this to its input-error exit code.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SequenceSource {
    enum class Kind { PpmDir, Y4mFile };
    Kind kind = Kind::PpmDir;
    std::filesystem::path path;
    std::optional<int> frame_limit;
};

/// Paths ending in .y4m name a YUV4MPEG2 stream, anything else a directory
/// of numbered binary PPM (P6) frames.
SequenceSource deduce_source(const std::filesystem::path& path);

/// Frames in index order. PPM frames must be 8-bit (maxval 255); Y4M streams
/// are converted to RGB via full-range BT.601 with nearest-neighbor chroma
/// upsampling (C420 family and C444 supported).
std::vector<Frame> read_sequence(const SequenceSource& src);

/// PPM directories round-trip bit-exactly. Y4M output is written as C444
/// (the RGB to YCbCr rounding is lossy).
void write_sequence(const std::vector<Frame>& frames, const SequenceSource& dst);

void write_pgm(const GrayMap& m, const std::filesystem::path& path);

/// Transmission values scaled to 0..255 for dumping as PGM.
GrayMap to_gray(const TransmissionMap& tm);

/// One row per processed frame: frame_index, gop_index, class, mode, ms,
/// skip_ratio (blank where not applicable).
void write_report_csv(const RunReport& report, const std::filesystem::path& path);

}  // namespace clearvid
