#include "clearvid/dehaze.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace clearvid {

namespace {

inline int min_channel(const Rgb& p) { return std::min({p.r, p.g, p.b}); }

// out[i] = min of in[max(0, i-r) .. min(n-1, i+r)], monotone-deque sweep.
void sliding_min(const double* in, double* out, int n, int stride, int r) {
    std::deque<int> q;
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int hi = std::min(n - 1, i + r);
        for (; next <= hi; ++next) {
            const double v = in[std::size_t(next) * stride];
            while (!q.empty() && in[std::size_t(q.back()) * stride] >= v) q.pop_back();
            q.push_back(next);
        }
        while (q.front() < i - r) q.pop_front();
        out[std::size_t(i) * stride] = in[std::size_t(q.front()) * stride];
    }
}

}  // namespace

void validate(const DehazeConfig& cfg) {
    if (!(cfg.omega > 0.0 && cfg.omega <= 1.0))
        throw std::invalid_argument("omega must be in (0, 1]");
    if (cfg.window_radius < 0) throw std::invalid_argument("window_radius must be >= 0");
    if (cfg.airlight_candidates < 1)
        throw std::invalid_argument("airlight_candidates must be >= 1");
    if (std::abs(cfg.blend_old + cfg.blend_new - 1.0) > 1e-12)
        throw std::invalid_argument("blend_old + blend_new must equal 1");
    if (!(cfg.t_floor > 0.0 && cfg.t_floor < 1.0))
        throw std::invalid_argument("t_floor must be in (0, 1)");
}

Airlight estimate_airlight(const Frame& f, const DehazeConfig& cfg) {
    const std::size_t total = f.pixel_count();
    if (total == 0) throw std::invalid_argument("estimate_airlight: empty frame");
    const std::size_t want = std::min<std::size_t>(std::size_t(cfg.airlight_candidates), total);

    std::array<std::size_t, 256> hist{};
    for (const Rgb& p : f.samples) ++hist[std::size_t(min_channel(p))];

    // Candidate set: every pixel whose min-channel exceeds `thr`, plus the
    // earliest pixels at exactly `thr` until `want` candidates are reached.
    // Equivalent to a stable sort by (min-channel desc, raster asc).
    int thr = 0;
    std::size_t above = 0;
    for (int v = 255; v >= 0; --v) {
        if (above + hist[std::size_t(v)] >= want) {
            thr = v;
            break;
        }
        above += hist[std::size_t(v)];
    }
    std::size_t equal_quota = want - above;

    int best_sum = -1;
    Rgb best{};
    for (const Rgb& p : f.samples) {
        const int mc = min_channel(p);
        if (mc < thr) continue;
        if (mc == thr) {
            if (equal_quota == 0) continue;
            --equal_quota;
        }
        const int sum = int(p.r) + int(p.g) + int(p.b);
        if (sum > best_sum) {
            best_sum = sum;
            best = p;
        }
    }
    return Airlight{std::max(1.0, double(best.r)), std::max(1.0, double(best.g)),
                    std::max(1.0, double(best.b))};
}

Airlight blend_airlight(const Airlight& prev, const Airlight& candidate, const DehazeConfig& cfg) {
    return Airlight{prev.r * cfg.blend_old + candidate.r * cfg.blend_new,
                    prev.g * cfg.blend_old + candidate.g * cfg.blend_new,
                    prev.b * cfg.blend_old + candidate.b * cfg.blend_new};
}

TransmissionEstimator::TransmissionEstimator(const Airlight& a, const DehazeConfig& cfg)
    : cfg_(cfg) {
    validate(cfg);
    for (int v = 0; v < 256; ++v) {
        ratio_[0][std::size_t(v)] = double(v) / a.r;
        ratio_[1][std::size_t(v)] = double(v) / a.g;
        ratio_[2][std::size_t(v)] = double(v) / a.b;
    }
}

double TransmissionEstimator::min_ratio(const Rgb& p) const {
    return std::min({ratio_[0][p.r], ratio_[1][p.g], ratio_[2][p.b]});
}

double TransmissionEstimator::to_transmission(double window_min) const {
    return std::clamp(1.0 - cfg_.omega * window_min, cfg_.t_floor, 1.0);
}

TransmissionMap TransmissionEstimator::full_map(const Frame& f) const {
    const int w = f.width, h = f.height;
    const int r = cfg_.window_radius;
    TransmissionMap out;
    out.width = w;
    out.height = h;
    out.t.resize(std::size_t(w) * h);

    std::vector<double> ratios(std::size_t(w) * h);
    for (std::size_t i = 0; i < f.samples.size(); ++i) ratios[i] = min_ratio(f.samples[i]);

    // Separable window min: rows first, then columns in place.
    std::vector<double> rowmin(std::size_t(w) * h);
    for (int y = 0; y < h; ++y)
        sliding_min(ratios.data() + std::size_t(y) * w, rowmin.data() + std::size_t(y) * w, w, 1, r);
    std::vector<double> colmin(std::size_t(w) * h);
    for (int x = 0; x < w; ++x)
        sliding_min(rowmin.data() + x, colmin.data() + x, h, w, r);

    for (std::size_t i = 0; i < out.t.size(); ++i) out.t[i] = to_transmission(colmin[i]);
    return out;
}

void TransmissionEstimator::fill_rect(const Frame& f, int x0, int y0, int w, int h,
                                      TransmissionMap& out) const {
    if (out.width != f.width || out.height != f.height)
        throw std::invalid_argument("fill_rect: output map dimensions differ from frame");
    if (x0 < 0 || y0 < 0 || w < 0 || h < 0 || x0 + w > f.width || y0 + h > f.height)
        throw std::invalid_argument("fill_rect: rectangle out of bounds");
    const int r = cfg_.window_radius;

    // Row mins for the rect columns over the rows the vertical pass needs.
    const int ry0 = std::max(0, y0 - r);
    const int ry1 = std::min(f.height - 1, y0 + h - 1 + r);
    const int rows = ry1 - ry0 + 1;
    std::vector<double> rowmin(std::size_t(rows) * w);
    for (int y = ry0; y <= ry1; ++y) {
        for (int x = x0; x < x0 + w; ++x) {
            const int cx0 = std::max(0, x - r);
            const int cx1 = std::min(f.width - 1, x + r);
            double m = min_ratio(f.at(cx0, y));
            for (int xx = cx0 + 1; xx <= cx1; ++xx) m = std::min(m, min_ratio(f.at(xx, y)));
            rowmin[std::size_t(y - ry0) * w + (x - x0)] = m;
        }
    }
    for (int y = y0; y < y0 + h; ++y) {
        const int cy0 = std::max(0, y - r);
        const int cy1 = std::min(f.height - 1, y + r);
        for (int x = x0; x < x0 + w; ++x) {
            double m = rowmin[std::size_t(cy0 - ry0) * w + (x - x0)];
            for (int yy = cy0 + 1; yy <= cy1; ++yy)
                m = std::min(m, rowmin[std::size_t(yy - ry0) * w + (x - x0)]);
            out.t[std::size_t(y) * f.width + x] = to_transmission(m);
        }
    }
}

TransmissionMap transmission_map(const Frame& f, const Airlight& a, const DehazeConfig& cfg) {
    return TransmissionEstimator(a, cfg).full_map(f);
}

double boost_multiplier(double t) {
    if (!(t > 0.0) || t > 1.0)
        throw std::domain_error("boost_multiplier: t must be in (0, 1]");
    if (t <= 0.5) return 2.0 * t;
    return -2.0 * t * t + 8.0 - 3.0 / t;
}

Frame recover_frame(const Frame& f, const Airlight& a, const TransmissionMap& tm,
                    const DehazeConfig& cfg) {
    if (f.width != tm.width || f.height != tm.height)
        throw std::invalid_argument("recover_frame: frame and transmission map dimensions differ");
    Frame out = f;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const double t = tm.t[i];
        const double d =
            cfg.use_multiplier ? std::max(boost_multiplier(t) * t, cfg.t_floor) : t;
        const double inv = 1.0 / d;
        const Rgb& p = f.samples[i];
        out.samples[i].r = to_byte((double(p.r) - a.r) * inv + a.r);
        out.samples[i].g = to_byte((double(p.g) - a.g) * inv + a.g);
        out.samples[i].b = to_byte((double(p.b) - a.b) * inv + a.b);
    }
    return out;
}

}  // namespace clearvid
