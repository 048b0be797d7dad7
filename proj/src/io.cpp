#include "clearvid/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace clearvid {

namespace fs = std::filesystem;

namespace {

// ---- PPM (P6, binary, maxval 255) ----

// Skips whitespace and '#' comment lines between header tokens.
std::string next_pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
            continue;
        }
        if (std::isspace(c)) continue;
        break;
    }
    if (c == EOF) return tok;
    tok.push_back(char(c));
    while ((c = in.get()) != EOF && !std::isspace(c) && c != '#') tok.push_back(char(c));
    if (c == '#') in.unget();
    return tok;
}

int parse_pnm_int(std::istream& in, const fs::path& path, const char* what) {
    const std::string tok = next_pnm_token(in);
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw InputError(path.string() + ": malformed PPM header (" + what + ")");
    }
}

Frame read_ppm(const fs::path& path, int index) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string() + ": cannot open");

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '6')
        throw InputError(path.string() + ": not a binary PPM (P6) file");

    const int width = parse_pnm_int(in, path, "width");
    const int height = parse_pnm_int(in, path, "height");
    const int maxval = parse_pnm_int(in, path, "maxval");
    if (maxval != 255)
        throw InputError(path.string() + ": unsupported maxval " + std::to_string(maxval) +
                         " (only 8-bit PPM is supported)");
    if (width < kMinFrameDim || height < kMinFrameDim)
        throw InputError(path.string() + ": frame smaller than 16x16");
    // Exactly one whitespace byte separates the header from the raster.

    Frame f;
    f.width = width;
    f.height = height;
    f.index = index;
    f.samples.resize(std::size_t(width) * height);
    in.read(reinterpret_cast<char*>(f.samples.data()),
            std::streamsize(f.samples.size() * sizeof(Rgb)));
    if (in.gcount() != std::streamsize(f.samples.size() * sizeof(Rgb)))
        throw InputError(path.string() + ": truncated pixel data");
    return f;
}

void write_ppm(const Frame& f, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path.string() + ": cannot open for writing");
    out << "P6\n" << f.width << ' ' << f.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(f.samples.data()),
              std::streamsize(f.samples.size() * sizeof(Rgb)));
    if (!out) throw InputError(path.string() + ": write failed");
}

// ---- YUV4MPEG2 ----

enum class Y4mColor { C420, C444 };

struct Y4mHeader {
    int width = 0;
    int height = 0;
    Y4mColor color = Y4mColor::C420;
};

Y4mHeader parse_y4m_header(const std::string& line, const fs::path& path) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag != "YUV4MPEG2") throw InputError(path.string() + ": missing YUV4MPEG2 signature");

    Y4mHeader hdr;
    while (ss >> tag) {
        if (tag.size() < 2) throw InputError(path.string() + ": malformed stream parameter");
        const std::string val = tag.substr(1);
        switch (tag[0]) {
            case 'W': hdr.width = std::atoi(val.c_str()); break;
            case 'H': hdr.height = std::atoi(val.c_str()); break;
            case 'C':
                if (val.rfind("420", 0) == 0)
                    hdr.color = Y4mColor::C420;
                else if (val == "444")
                    hdr.color = Y4mColor::C444;
                else
                    throw InputError(path.string() + ": unsupported colorspace C" + val);
                break;
            default: break;  // F/I/A/X parameters do not affect decoding
        }
    }
    if (hdr.width < kMinFrameDim || hdr.height < kMinFrameDim)
        throw InputError(path.string() + ": bad or missing stream dimensions");
    if (hdr.color == Y4mColor::C420 && (hdr.width % 2 != 0 || hdr.height % 2 != 0))
        throw InputError(path.string() + ": odd dimensions with 4:2:0 subsampling");
    return hdr;
}

// Full-range BT.601.
Rgb ycbcr_to_rgb(int y, int cb, int cr) {
    const double yd = y, cbd = cb - 128.0, crd = cr - 128.0;
    return Rgb{to_byte(yd + 1.402 * crd),
               to_byte(yd - 0.344136 * cbd - 0.714136 * crd),
               to_byte(yd + 1.772 * cbd)};
}

void rgb_to_ycbcr(const Rgb& p, std::uint8_t& y, std::uint8_t& cb, std::uint8_t& cr) {
    const double yd = 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
    y = to_byte(yd);
    cb = to_byte((double(p.b) - yd) / 1.772 + 128.0);
    cr = to_byte((double(p.r) - yd) / 1.402 + 128.0);
}

std::vector<Frame> read_y4m(const SequenceSource& src) {
    std::ifstream in(src.path, std::ios::binary);
    if (!in) throw InputError(src.path.string() + ": cannot open");

    std::string header_line;
    if (!std::getline(in, header_line))
        throw InputError(src.path.string() + ": empty file");
    const Y4mHeader hdr = parse_y4m_header(header_line, src.path);

    const std::size_t luma = std::size_t(hdr.width) * hdr.height;
    const std::size_t chroma = hdr.color == Y4mColor::C420 ? luma / 4 : luma;
    std::vector<std::uint8_t> planes(luma + 2 * chroma);

    std::vector<Frame> frames;
    std::string frame_line;
    while (std::getline(in, frame_line)) {
        if (frame_line.rfind("FRAME", 0) != 0)
            throw InputError(src.path.string() + ": malformed FRAME marker");
        in.read(reinterpret_cast<char*>(planes.data()), std::streamsize(planes.size()));
        if (in.gcount() != std::streamsize(planes.size()))
            throw InputError(src.path.string() + ": truncated frame data");

        Frame f;
        f.width = hdr.width;
        f.height = hdr.height;
        f.index = int(frames.size());
        f.samples.resize(luma);
        const std::uint8_t* yp = planes.data();
        const std::uint8_t* up = planes.data() + luma;
        const std::uint8_t* vp = planes.data() + luma + chroma;
        const int cw = hdr.color == Y4mColor::C420 ? hdr.width / 2 : hdr.width;
        for (int y = 0; y < hdr.height; ++y) {
            for (int x = 0; x < hdr.width; ++x) {
                const std::size_t ci =
                    hdr.color == Y4mColor::C420
                        ? std::size_t(y / 2) * cw + std::size_t(x / 2)
                        : std::size_t(y) * cw + std::size_t(x);
                f.samples[std::size_t(y) * hdr.width + x] =
                    ycbcr_to_rgb(yp[std::size_t(y) * hdr.width + x], up[ci], vp[ci]);
            }
        }
        frames.push_back(std::move(f));
        if (src.frame_limit && int(frames.size()) >= *src.frame_limit) break;
    }
    if (frames.empty()) throw InputError(src.path.string() + ": no frames");
    return frames;
}

void write_y4m(const std::vector<Frame>& frames, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path.string() + ": cannot open for writing");
    const Frame& first = frames.front();
    out << "YUV4MPEG2 W" << first.width << " H" << first.height << " F25:1 Ip A1:1 C444\n";
    const std::size_t n = first.samples.size();
    std::vector<std::uint8_t> planes(3 * n);
    for (const Frame& f : frames) {
        for (std::size_t i = 0; i < n; ++i)
            rgb_to_ycbcr(f.samples[i], planes[i], planes[n + i], planes[2 * n + i]);
        out << "FRAME\n";
        out.write(reinterpret_cast<const char*>(planes.data()), std::streamsize(planes.size()));
    }
    if (!out) throw InputError(path.string() + ": write failed");
}

std::vector<Frame> read_ppm_dir(const SequenceSource& src) {
    if (!fs::is_directory(src.path))
        throw InputError(src.path.string() + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(src.path))
        if (entry.is_regular_file() && entry.path().extension() == ".ppm")
            files.push_back(entry.path());
    if (files.empty()) throw InputError(src.path.string() + ": no .ppm frames found");
    std::sort(files.begin(), files.end());
    if (src.frame_limit && int(files.size()) > *src.frame_limit)
        files.resize(std::size_t(*src.frame_limit));

    std::vector<Frame> frames;
    frames.reserve(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) {
        Frame f = read_ppm(files[i], int(i));
        if (!frames.empty() && !f.same_dims(frames.front()))
            throw InputError(files[i].string() + ": dimensions differ from earlier frames");
        frames.push_back(std::move(f));
    }
    return frames;
}

}  // namespace

SequenceSource deduce_source(const fs::path& path) {
    SequenceSource src;
    src.path = path;
    src.kind = path.extension() == ".y4m" ? SequenceSource::Kind::Y4mFile
                                          : SequenceSource::Kind::PpmDir;
    return src;
}

std::vector<Frame> read_sequence(const SequenceSource& src) {
    return src.kind == SequenceSource::Kind::Y4mFile ? read_y4m(src) : read_ppm_dir(src);
}

void write_sequence(const std::vector<Frame>& frames, const SequenceSource& dst) {
    if (frames.empty()) throw InputError("write_sequence: nothing to write");
    if (dst.kind == SequenceSource::Kind::Y4mFile) {
        write_y4m(frames, dst.path);
        return;
    }
    std::error_code ec;
    fs::create_directories(dst.path, ec);
    if (!fs::is_directory(dst.path))
        throw InputError(dst.path.string() + ": cannot create output directory");
    char name[32];
    for (std::size_t i = 0; i < frames.size(); ++i) {
        std::snprintf(name, sizeof(name), "%06zu.ppm", i);
        write_ppm(frames[i], dst.path / name);
    }
}

void write_pgm(const GrayMap& m, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path.string() + ": cannot open for writing");
    out << "P5\n" << m.width << ' ' << m.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(m.values.data()), std::streamsize(m.values.size()));
    if (!out) throw InputError(path.string() + ": write failed");
}

GrayMap to_gray(const TransmissionMap& tm) {
    GrayMap g;
    g.width = tm.width;
    g.height = tm.height;
    g.values.resize(tm.t.size());
    for (std::size_t i = 0; i < tm.t.size(); ++i) g.values[i] = to_byte(tm.t[i] * 255.0);
    return g;
}

void write_report_csv(const RunReport& report, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError(path.string() + ": cannot open for writing");
    out << "frame_index,gop_index,class,mode,ms,skip_ratio\n";
    char buf[64];
    for (const FrameRecord& r : report.frames) {
        std::snprintf(buf, sizeof(buf), "%.3f", r.ms);
        out << r.frame_index << ',' << r.gop_index << ',' << to_string(r.impairment) << ','
            << to_string(r.mode) << ',' << buf << ',';
        if (r.skip_ratio) {
            std::snprintf(buf, sizeof(buf), "%.4f", *r.skip_ratio);
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw InputError(path.string() + ": write failed");
}

}  // namespace clearvid
