#include "clearvid/cli.hpp"

#include "clearvid/io.hpp"
#include "clearvid/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

namespace clearvid {

namespace fs = std::filesystem;

namespace {

struct PipelineFlags {
    std::string mode = "framewise";
    std::string force_class = "auto";
    int gop = 30;
    double omega = 0.8;
    std::int64_t sad_threshold = 240;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f, bool with_mode) {
    if (with_mode)
        cmd->add_option("--mode", f.mode, "framewise or accel")
            ->check(CLI::IsMember({"framewise", "accel"}));
    cmd->add_option("--force-class", f.force_class, "bypass automatic impairment detection")
        ->check(CLI::IsMember({"auto", "haze", "lowlight", "normal"}));
    cmd->add_option("--gop", f.gop, "maximum GOP length in frames")->check(CLI::PositiveNumber);
    cmd->add_option("--omega", f.omega, "haze retention factor in (0, 1]");
    cmd->add_option("--sad-threshold", f.sad_threshold, "block skip threshold on subsampled SAD")
        ->check(CLI::NonNegativeNumber);
}

PipelineConfig make_config(const PipelineFlags& f) {
    PipelineConfig cfg;
    cfg.max_gop_len = f.gop;
    cfg.mode = f.mode == "accel" ? Mode::Accelerated : Mode::FrameWise;
    cfg.dehaze.omega = f.omega;
    cfg.accel.sad_threshold = f.sad_threshold;
    if (f.force_class == "haze")
        cfg.force_class = ImpairmentClass::Hazy;
    else if (f.force_class == "lowlight")
        cfg.force_class = ImpairmentClass::InvertedHazy;
    else if (f.force_class == "normal")
        cfg.force_class = ImpairmentClass::Normal;
    validate(cfg.dehaze);
    return cfg;
}

std::string gop_line(const GopRecord& g) {
    char buf[160];
    if (g.airlight) {
        std::snprintf(buf, sizeof(buf),
                      "gop %d: start=%d len=%d class=%s scene_change=%d airlight=(%g,%g,%g)",
                      g.gop_index, g.start_index, g.length, to_string(g.impairment),
                      int(g.scene_change), g.airlight->r, g.airlight->g, g.airlight->b);
    } else {
        std::snprintf(buf, sizeof(buf), "gop %d: start=%d len=%d class=%s scene_change=%d",
                      g.gop_index, g.start_index, g.length, to_string(g.impairment),
                      int(g.scene_change));
    }
    return buf;
}

int run_enhance(const std::string& input, const std::string& output, const PipelineFlags& flags,
                const std::string& report_path, const std::string& dump_tmaps, bool dump_detect,
                std::ostream& out) {
    const PipelineConfig cfg = make_config(flags);
    const std::vector<Frame> frames = read_sequence(deduce_source(input));

    TmapObserver observer;
    if (!dump_tmaps.empty()) {
        fs::create_directories(dump_tmaps);
        const fs::path dir = dump_tmaps;
        observer = [dir](int frame_index, const TransmissionMap& tm) {
            char name[32];
            std::snprintf(name, sizeof(name), "%06d.pgm", frame_index);
            write_pgm(to_gray(tm), dir / name);
        };
    }

    const EnhanceResult res = enhance_sequence(frames, cfg, observer);
    write_sequence(res.frames, deduce_source(output));
    if (!report_path.empty()) write_report_csv(res.report, report_path);
    if (dump_detect)
        for (const GopRecord& g : res.report.gops) out << gop_line(g) << "\n";
    return 0;
}

int run_bench(const std::string& input, const PipelineFlags& flags, int runs,
              const std::string& report_path, std::ostream& out) {
    PipelineConfig cfg = make_config(flags);
    const std::vector<Frame> frames = read_sequence(deduce_source(input));

    std::vector<double> fw_ms, acc_ms;
    std::string csv = "mode,run,mean_ms_per_frame\n";
    char buf[96];
    for (int run = 1; run <= runs; ++run) {
        for (const Mode mode : {Mode::FrameWise, Mode::Accelerated}) {
            cfg.mode = mode;
            const EnhanceResult res = enhance_sequence(frames, cfg);
            const double ms = res.report.mean_ms();
            (mode == Mode::FrameWise ? fw_ms : acc_ms).push_back(ms);
            std::snprintf(buf, sizeof(buf), "%s,%d,%.3f\n", to_string(mode), run, ms);
            csv += buf;
        }
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    const double fw = median(fw_ms), acc = median(acc_ms);
    std::snprintf(buf, sizeof(buf), "framewise,median,%.3f\naccel,median,%.3f\n", fw, acc);
    csv += buf;

    if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!f) throw InputError(report_path + ": cannot open for writing");
        f << csv;
    } else {
        out << csv;
    }
    std::snprintf(buf, sizeof(buf), "accel median %.3f ms/frame vs framewise %.3f (%.1f%% saved)\n",
                  acc, fw, fw > 0.0 ? (1.0 - acc / fw) * 100.0 : 0.0);
    out << buf;
    return 0;
}

std::vector<Frame> read_matched_pair(const std::string& a, const std::string& b,
                                     std::vector<Frame>& frames_b) {
    std::vector<Frame> frames_a = read_sequence(deduce_source(a));
    frames_b = read_sequence(deduce_source(b));
    if (frames_a.size() != frames_b.size())
        throw InputError("sequences have different frame counts");
    if (!frames_a.front().same_dims(frames_b.front()))
        throw InputError("sequences have different dimensions");
    return frames_a;
}

int run_analyze_psnr(const std::string& a, const std::string& b, std::ostream& out) {
    std::vector<Frame> fb;
    const std::vector<Frame> fa = read_matched_pair(a, b, fb);
    bool any_diff = false;
    std::vector<std::optional<double>> per_frame(fa.size());
    for (std::size_t i = 0; i < fa.size(); ++i) {
        per_frame[i] = psnr(fa[i], fb[i]);
        any_diff = any_diff || per_frame[i].has_value();
    }
    if (!any_diff) {
        out << "identical\n";
        return 0;
    }
    double sum = 0.0;
    int counted = 0;
    char buf[64];
    for (std::size_t i = 0; i < per_frame.size(); ++i) {
        if (per_frame[i]) {
            std::snprintf(buf, sizeof(buf), "frame %zu: %.4f dB\n", i, *per_frame[i]);
            sum += *per_frame[i];
            ++counted;
        } else {
            std::snprintf(buf, sizeof(buf), "frame %zu: identical\n", i);
        }
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "mean %.4f dB over %d differing frames\n", sum / counted,
                  counted);
    out << buf;
    return 0;
}

int run_analyze_histogram(const std::string& input, std::ostream& out) {
    const std::vector<Frame> frames = read_sequence(deduce_source(input));
    const Histogram h = min_channel_histogram(frames);
    out << "bin_lo,bin_hi,count\n";
    for (int i = 0; i < Histogram::kBins; ++i)
        out << h.bin_edges[std::size_t(i)] << ',' << h.bin_edges[std::size_t(i) + 1] - 1 << ','
            << h.counts[std::size_t(i)] << "\n";
    return 0;
}

int run_analyze_chi_square(const std::string& observed, const std::string& expected,
                           std::ostream& out) {
    std::vector<Frame> fe;
    const std::vector<Frame> fo = read_sequence(deduce_source(observed));
    fe = read_sequence(deduce_source(expected));
    const ChiSquareResult res =
        chi_square(min_channel_histogram(fo), min_channel_histogram(fe));
    char buf[96];
    std::snprintf(buf, sizeof(buf), "statistic=%.6f df=%d consistent_at_p05=%s\n", res.statistic,
                  res.degrees_of_freedom, res.consistent_at_p05 ? "yes" : "no");
    out << buf;
    return 0;
}

int run_analyze_tmap_diff(const std::string& input, const PipelineFlags& flags,
                          std::ostream& out) {
    const PipelineConfig cfg = make_config(flags);
    const std::vector<Frame> frames = read_sequence(deduce_source(input));
    const RelDiffHistogram h = compare_tmap_modes(frames, cfg);
    if (h.empty()) {
        out << "no skipped blocks\n";
        return 0;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "skipped_pixels=%llu fraction_below_10pct=%.6f\n",
                  static_cast<unsigned long long>(h.total), h.fraction_below(0.10));
    out << buf;
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Video enhancement for hazy, low-light and high-dynamic-range footage"};
    app.name("clearvid");
    app.require_subcommand(1);

    // enhance
    auto* enhance = app.add_subcommand("enhance", "Enhance a frame sequence");
    std::string in_path, out_path, report_path, dump_tmaps;
    bool dump_detect = false;
    PipelineFlags flags;
    enhance->add_option("--input", in_path, "input sequence (PPM directory or .y4m)")
        ->required();
    enhance->add_option("--output", out_path, "output sequence (PPM directory or .y4m)")
        ->required();
    add_pipeline_flags(enhance, flags, /*with_mode=*/true);
    enhance->add_option("--report", report_path, "write per-frame CSV report");
    enhance->add_option("--dump-tmaps", dump_tmaps, "write transmission maps as PGM files");
    enhance->add_flag("--dump-detect", dump_detect, "print per-GOP detection results");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Statistics over sequences");
    analyze->require_subcommand(1);
    std::string an_a, an_b;
    PipelineFlags an_flags;
    auto* a_psnr = analyze->add_subcommand("psnr", "PSNR between two sequences");
    a_psnr->add_option("a", an_a)->required();
    a_psnr->add_option("b", an_b)->required();
    auto* a_hist = analyze->add_subcommand("histogram", "min-channel histogram of a sequence");
    a_hist->add_option("input", an_a)->required();
    auto* a_chi = analyze->add_subcommand("chi-square",
                                          "chi-square test between min-channel histograms");
    a_chi->add_option("observed", an_a)->required();
    a_chi->add_option("expected", an_b)->required();
    auto* a_tdiff = analyze->add_subcommand(
        "tmap-diff", "transmission differences of accelerated vs frame-wise maps");
    a_tdiff->add_option("input", an_a)->required();
    add_pipeline_flags(a_tdiff, an_flags, /*with_mode=*/false);

    // bench
    auto* bench = app.add_subcommand("bench", "Time both modes over the same input");
    std::string bench_in, bench_report;
    int bench_runs = 3;
    PipelineFlags bench_flags;
    bench->add_option("--input", bench_in)->required();
    bench->add_option("--runs", bench_runs, "runs per mode")->check(CLI::PositiveNumber);
    bench->add_option("--report", bench_report, "write timing CSV");
    add_pipeline_flags(bench, bench_flags, /*with_mode=*/false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (enhance->parsed())
            return run_enhance(in_path, out_path, flags, report_path, dump_tmaps, dump_detect,
                               out);
        if (a_psnr->parsed()) return run_analyze_psnr(an_a, an_b, out);
        if (a_hist->parsed()) return run_analyze_histogram(an_a, out);
        if (a_chi->parsed()) return run_analyze_chi_square(an_a, an_b, out);
        if (a_tdiff->parsed()) return run_analyze_tmap_diff(an_a, an_flags, out);
        if (bench->parsed())
            return run_bench(bench_in, bench_flags, bench_runs, bench_report, out);
        err << "usage error: no subcommand\n";
        return 2;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace clearvid
